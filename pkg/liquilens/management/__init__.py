"""Management commands for liquilens."""
