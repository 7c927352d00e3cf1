from fmring.cli import main

main()
