"""Console entry point of rotor-arrival."""

from rotor_arrival.cli.commands import cli


def main() -> None:
    cli(prog_name="rotor-arrival")


if __name__ == "__main__":
    main()
