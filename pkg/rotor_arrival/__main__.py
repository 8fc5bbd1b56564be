from rotor_arrival.main import main

main()
