"""Figure output."""
