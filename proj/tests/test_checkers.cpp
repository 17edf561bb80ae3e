// placeholder; checkers tests land with the checkers module
