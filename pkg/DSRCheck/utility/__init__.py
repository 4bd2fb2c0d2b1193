import json
import os
import sys

from colorama import Fore, Style

ENCODING = "utf-8"

COLOR_MODES = ("auto", "never", "always")


def dump_json(filename: str, data):
    """
    Dump data into a json file
    """
    with open(filename, "w", encoding=ENCODING) as obj:
        json.dump(data, obj, ensure_ascii=False, indent=2, sort_keys=True)


def load_json(filename: str):
    """
    Load data from a json file
    """
    with open(filename, encoding=ENCODING) as obj:
        return json.load(obj)


def dumps_json(data) -> str:
    """
    Same layout as dump_json, as a string
    """
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)


def read_text(filename: str) -> str:
    with open(filename, encoding=ENCODING) as obj:
        return obj.read()


def use_color(stream=None) -> bool:
    """
    SORTC_COLOR=auto|never|always; auto colours only terminals
    """
    mode = os.environ.get("SORTC_COLOR", "auto").lower()
    if mode not in COLOR_MODES:
        mode = "auto"
    if mode == "auto":
        stream = stream or sys.stdout
        return hasattr(stream, "isatty") and stream.isatty()
    return mode == "always"


def paint(text: str, color: str, enabled: bool) -> str:
    if not enabled:
        return text
    return f"{color}{text}{Style.RESET_ALL}"


SEVERITY_COLORS = {"error": Fore.RED, "warning": Fore.YELLOW, "ok": Fore.GREEN}
