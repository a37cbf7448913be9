from redlab.cli import main

main()
