"""Value types and persistence."""
