"""One command class per certann subcommand."""
