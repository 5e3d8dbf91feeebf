"""Rich styles used by the certann console output."""

_INFO = "#d0d0d0"
_WARNING = "#f4bf75"
_ERROR = "#ac4142"
_PASS = "#90a959"
_HEADING = "bold #6a9fb5"
_DIM = "#808080"


class Styles:
    """Style names for rich markup and console.print(style=...)."""

    RICH_INFO = _INFO
    RICH_WARNING = _WARNING
    RICH_ERROR = _ERROR
    RICH_PASS = _PASS
    RICH_FAIL = _ERROR
    RICH_HEADING = _HEADING
    RICH_DIM = _DIM

    @staticmethod
    def verdict(*, passed: bool) -> str:
        """Style for a pass/fail cell."""
        return Styles.RICH_PASS if passed else Styles.RICH_FAIL
