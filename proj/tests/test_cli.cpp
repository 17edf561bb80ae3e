// placeholder; CLI tests land with the CLI
