"""Tagged console messages written to stderr.

Records produced by the CLI go to stdout; everything printed here goes to
stderr so the two streams can be piped separately.
"""
import sys

_VERBOSE = False

_ASCII_REPLACEMENTS = {
    '✓': '[OK]',
    '✗': '[X]',
    '⚠': '[!]',
    'α': 'alpha',
    'ϑ': 'theta',
    'χ': 'chi',
    '−': '-',
}


def set_verbose(verbose: bool):
    """Enable or disable [INFO] messages."""
    global _VERBOSE
    _VERBOSE = bool(verbose)


def is_verbose() -> bool:
    return _VERBOSE


def safe_print(message: str, stream=None):
    """Print message safely, handling encoding errors on narrow consoles."""
    stream = stream or sys.stderr
    try:
        print(message, file=stream)
    except UnicodeEncodeError:
        safe_message = message
        for symbol, replacement in _ASCII_REPLACEMENTS.items():
            safe_message = safe_message.replace(symbol, replacement)
        print(safe_message.encode('ascii', 'replace').decode('ascii'), file=stream)


def log_status(tag: str, message: str):
    """
    Write a tagged status line such as ``[WARNING] scan not certified``.

    Args:
        tag: One of INFO, OK, WARNING, ERROR
        message: Human readable text
    """
    tag = tag.upper()
    if tag in ('INFO', 'OK') and not _VERBOSE:
        return
    safe_print(f"[{tag}] {message}")
