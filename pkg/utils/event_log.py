"""
Event log for optocorr.

Every noteworthy step (a steady state solved, a sweep row computed, a check
failed in the verification suite) is reported as a named event. Events are
grouped into categories by their name prefix and printed in color on the
console, and can optionally be mirrored to a plain-text log file.

Usage:
    from utils import event_log

    logger = event_log.get_logger(__name__)
    event_log.log_event("sweep_started", preset="fig2b", points=121)
    event_log.log_event("verify_check_failed", level=logging.WARNING,
                        details={"check": "oracle_equivalence", "max_dev": 1e-3})
"""
import logging
from datetime import datetime

ROOT_LOGGER_NAME = "optocorr"
EVENT_LOGGER_NAME = ROOT_LOGGER_NAME + ".events"

# Settings
_debug_mode = False
_use_color = True
_console_handler = None
_file_handler = None


class Colors:
    RESET = '\033[0m'
    BOLD = '\033[1m'

    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    BLUE = '\033[34m'
    MAGENTA = '\033[35m'
    CYAN = '\033[36m'
    WHITE = '\033[37m'

    BG_RED = '\033[41m'


# Map event categories to colors
EVENT_COLORS = {
    'model': Colors.GREEN,
    'oracle': Colors.BLUE,
    'measure': Colors.YELLOW,
    'sweep': Colors.MAGENTA,
    'verify': Colors.CYAN,
    'config': Colors.WHITE,
    'failure': Colors.BG_RED + Colors.WHITE,
}

_CATEGORY_PREFIXES = ('model', 'oracle', 'measure', 'sweep', 'verify', 'config')


def _get_event_category(event_name):
    """Get the category of an event based on its name."""
    if event_name.endswith('_failed') or event_name.endswith('_error'):
        return 'failure'
    for prefix in _CATEGORY_PREFIXES:
        if event_name.startswith(prefix + '_'):
            return prefix
    return 'config'


def _strip_colors(message):
    for color_code in vars(Colors).values():
        if isinstance(color_code, str) and color_code.startswith('\033'):
            message = message.replace(color_code, '')
    return message


class EventFormatter(logging.Formatter):
    """Formats records as ``[HH:MM:SS.mmm] CATEGORY: event - k=v, ...``.

    Records produced by log_event carry ``event`` and ``fields`` attributes;
    ordinary records are printed with their logger name as category.
    """

    def __init__(self, color=True):
        super().__init__()
        self.color = color

    def format(self, record):
        timestamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S.%f")[:-3]
        event_name = getattr(record, 'event', None)

        if event_name is None:
            message = f"[{timestamp}] {record.levelname}: {record.getMessage()}"
        else:
            category = _get_event_category(event_name)
            color = EVENT_COLORS.get(category, '')
            fields = getattr(record, 'fields', {})
            args_str = ", ".join(f"{k}={v}" for k, v in fields.items() if k != 'details')
            message = f"[{timestamp}] {color}{category.upper()}: {event_name}{Colors.RESET} - {args_str}"

            details = fields.get('details')
            if isinstance(details, dict):
                message += "\n  Details:"
                for k, v in details.items():
                    message += f"\n    {k}: {v}"

        if record.exc_info:
            message += "\n" + self.formatException(record.exc_info)

        if not self.color:
            message = _strip_colors(message)
        return message


def get_logger(name):
    """Return a logger below the optocorr root logger.

    Args:
        name: Usually the calling module's __name__

    Returns:
        logging.Logger
    """
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def log_event(event_name, level=logging.DEBUG, **kwargs):
    """Log a named event with keyword fields.

    Args:
        event_name: Event name; its prefix selects the category
        level: Logging level for the record
        **kwargs: Event fields; a dict passed as ``details`` is printed line by line
    """
    logging.getLogger(EVENT_LOGGER_NAME).log(
        level, event_name, extra={'event': event_name, 'fields': kwargs}
    )


def configure(debug=False, color=True):
    """Install the console handler on the optocorr root logger (idempotent).

    Args:
        debug: Log DEBUG events when True, INFO and above otherwise
        color: Emit ANSI colors on the console
    """
    global _console_handler, _use_color
    _use_color = color
    root = logging.getLogger(ROOT_LOGGER_NAME)
    if _console_handler is None:
        _console_handler = logging.StreamHandler()
        root.addHandler(_console_handler)
    _console_handler.setFormatter(EventFormatter(color=color))
    set_debug(debug)


def set_debug(mode=True):
    """Enable or disable debug logging for events."""
    global _debug_mode
    _debug_mode = mode
    logging.getLogger(ROOT_LOGGER_NAME).setLevel(logging.DEBUG if mode else logging.INFO)


def is_debug():
    return _debug_mode


def enable_file_logging(filename="optocorr_events.log"):
    """Mirror events to a file, with color codes stripped."""
    global _file_handler
    disable_file_logging()
    _file_handler = logging.FileHandler(filename, mode="a", encoding="utf-8")
    _file_handler.setFormatter(EventFormatter(color=False))
    logging.getLogger(ROOT_LOGGER_NAME).addHandler(_file_handler)
    log_event("config_file_logging_enabled", level=logging.INFO, filename=filename)


def disable_file_logging():
    """Stop mirroring events to a file."""
    global _file_handler
    if _file_handler is not None:
        logging.getLogger(ROOT_LOGGER_NAME).removeHandler(_file_handler)
        _file_handler.close()
        _file_handler = None


def set_console_logging(enabled=True):
    """Enable or disable logging to console."""
    if _console_handler is None:
        if enabled:
            configure(debug=_debug_mode, color=_use_color)
        return
    _console_handler.setLevel(logging.NOTSET if enabled else logging.CRITICAL + 1)
