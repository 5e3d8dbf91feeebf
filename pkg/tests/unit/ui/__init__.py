"""UI tests package."""
