from ssli_verifier import main

main()
