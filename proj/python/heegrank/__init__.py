"""Python bindings for the heegrank library.

The ``run_*`` helpers return ``(exit_code, report)`` with the report parsed
from its canonical JSON text.
"""

import json

from . import _heegrank
from ._heegrank import (
    HeegrankError,
    __version__,
    class_number,
    count_ap,
    kronecker,
    recurrence,
    reduced_forms,
)


def _wrap(fn):
    def run(*args, **kwargs):
        code, text = fn(*args, **kwargs)
        return code, json.loads(text)

    run.__name__ = fn.__name__.replace("cmd_", "run_")
    run.__doc__ = fn.__doc__
    return run


run_ap = _wrap(_heegrank.cmd_ap)
run_witness = _wrap(_heegrank.cmd_witness)
run_classfield = _wrap(_heegrank.cmd_classfield)
run_heegner = _wrap(_heegrank.cmd_heegner)
run_primesearch = _wrap(_heegrank.cmd_primesearch)
run_recurrence = _wrap(_heegrank.cmd_recurrence)

__all__ = [
    "HeegrankError",
    "__version__",
    "class_number",
    "count_ap",
    "kronecker",
    "recurrence",
    "reduced_forms",
    "run_ap",
    "run_witness",
    "run_classfield",
    "run_heegner",
    "run_primesearch",
    "run_recurrence",
]
