from macinv.cli import main

main()
