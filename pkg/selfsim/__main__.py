from selfsim.main import main

main()
