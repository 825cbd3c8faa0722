__all__ = (
    "is_debug",
    "set_debug",
    "version",
)

import os

# Expensive postcondition checks (ideal inverses, integrality of every
# intermediate coefficient ideal). Off by default; the test suite turns them on.
is_debug = os.environ.get("OKHNF_DEBUG", "") not in ("", "0")


def set_debug(enabled):
    global is_debug
    is_debug = bool(enabled)


def version():
    with open(os.path.join(os.path.dirname(__file__), "VERSION")) as version_file:
        return version_file.read().strip()
