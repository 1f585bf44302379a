"""File formats and instance generation."""
