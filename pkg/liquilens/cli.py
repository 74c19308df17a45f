"""Console entry point: ``liquilens <subcommand> [options]`` runs management command ``lens_<subcommand>``."""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING

import django
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(f"liquilens.{__name__}")

SUBCOMMANDS = ("forward", "inverse", "curve", "trace", "fit", "compare")
USAGE = f"""usage: liquilens {{{",".join(SUBCOMMANDS)}}} [options]

  forward   cap and focal length for a liquid volume (--volume)
  inverse   liquid volume for a focal length (--focal)
  curve     theoretical V-f / V-theta table (--f-min --f-max [--steps])
  trace     ray traced focal length and spherical aberration (--volume)
  fit       linear law and pump calibration for measurements (FILE | --sample)
  compare   measurements against theory (FILE | --sample)

Common options: --diameter --index --f-number --format {{table,csv,json}} --plot PATH
Run 'liquilens <subcommand> --help' for the options of a subcommand.
"""


def configure_django() -> None:
    """Configure minimal Django settings unless running inside a configured project."""
    if not settings.configured:
        settings.configure(INSTALLED_APPS=["liquilens"], USE_TZ=True)
    django.setup()


def main(argv: Sequence[str] | None = None) -> int:
    """Run a subcommand and return the exit code: 0 success, 1 usage error, 2 domain or data error."""
    args = list(sys.argv[1:] if argv is None else argv)
    position = next((i for i, arg in enumerate(args) if arg in SUBCOMMANDS), None)
    if position is None:
        if args and args[0] in ("-h", "--help"):
            sys.stdout.write(USAGE)
            return 0
        sys.stderr.write(USAGE)
        if args:
            sys.stderr.write(f"liquilens: no subcommand in {' '.join(args)}\n")
        return 1
    subcommand = args[position]
    configure_django()
    try:
        call_command(f"lens_{subcommand}", *args[position + 1 :], *args[:position])
    except CommandError as e:
        sys.stderr.write(f"liquilens {subcommand}: {e}\n")
        return e.returncode
    except SystemExit as e:
        # argparse exits after --help
        return e.code if isinstance(e.code, int) else 0
    return 0
