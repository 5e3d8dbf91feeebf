"""Console rendering of command output and reports."""
