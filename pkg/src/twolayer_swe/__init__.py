# __init__.py

__version__ = "0.1.0"


def main():
    """Entry point for the twolayer_swe command line."""
    from twolayer_swe.cli import app
    app()


if __name__ == "__main__":
    main()
