"""Named verification checks, grouped by engine."""
