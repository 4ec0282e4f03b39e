"""AMF-W splitting solver for semilinear parabolic PDEs on the unit hypercube."""

try:
    from amfw._core import (  # noqa: F401
        eval_r,
        list_presets,
        methods,
        run_config,
        run_preset,
        solve,
        stability_report,
    )
except ImportError:  # running from a build tree where _core sits on PYTHONPATH
    from _core import (  # noqa: F401
        eval_r,
        list_presets,
        methods,
        run_config,
        run_preset,
        solve,
        stability_report,
    )

__all__ = [
    "eval_r",
    "list_presets",
    "methods",
    "run_config",
    "run_preset",
    "solve",
    "stability_report",
]
