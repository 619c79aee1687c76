from spectral_green.cli import main

main()
