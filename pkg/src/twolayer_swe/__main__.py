# __main__.py

from twolayer_swe import main

if __name__ == "__main__":
    main()
