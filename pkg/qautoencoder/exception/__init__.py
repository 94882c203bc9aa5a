"""List of all exceptions used in the package."""
