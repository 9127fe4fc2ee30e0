from .cli.dispatch import main

main()
