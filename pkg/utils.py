import argparse
import json
import logging
import re
import sys
from pathlib import Path

_DECIMAL = re.compile(r"[+-]?[0-9]+")


def setup_logging(args):
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    handlers = [logging.StreamHandler(sys.stderr)]
    logdir = getattr(args, "logdir", None)
    if logdir:
        Path(logdir).mkdir(parents=True, exist_ok=True)
        name = getattr(args, "command", None) or "dpknots"
        handlers.append(logging.FileHandler(Path(logdir) / f"{name}.log"))
    formatter = logging.Formatter("%(asctime)s %(levelname)s %(message)s")
    logger = logging.getLogger()
    for handler in handlers:
        handler.setFormatter(formatter)
    logger.handlers = handlers
    logger.setLevel(level)
    return logger


def strict_int(text):
    """argparse type: plain ASCII decimal integers only (no '1_000', no '5.0', no padding)."""
    if not _DECIMAL.fullmatch(text):
        raise argparse.ArgumentTypeError(f"invalid decimal integer: '{text}'")
    return int(text)


def save_config(params_dict, logdir):
    """Snapshot the resolved run parameters next to the logs for experiment management."""
    path = Path(logdir) / "config"
    path.mkdir(parents=True, exist_ok=True)
    out = path / "run_config.json"
    out.write_text(json.dumps(dict(params_dict), indent=4, sort_keys=True, default=str))
    logging.info(f"Saved config to {out}")
    return out
