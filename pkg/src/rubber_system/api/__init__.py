"""The computational modules."""
