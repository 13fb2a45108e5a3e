"""Command-line surface: exceptions, run schemas and argument parsing."""
