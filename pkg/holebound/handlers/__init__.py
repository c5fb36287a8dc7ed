"""Command handlers for the holebound CLI."""
