"""Python front end for the skewlab C++ core.

The *_report functions return parsed dictionaries; the underlying extension
returns JSON text.
"""

import json

try:
    from skewlab import _skewlab as _core  # installed package layout
except ImportError:
    import _skewlab as _core  # build-tree layout

BudgetError = _core.BudgetError
ConfigError = _core.ConfigError

llt_deviation = _core.llt_deviation
w_mass = _core.w_mass
parity_mass = _core.parity_mass
wilson = _core.wilson
birkhoff = _core.birkhoff
omega_bit = _core.omega_bit
certify = _core.certify


def _json(fn):
    def wrapper(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


series_report = _json(_core.series_report)
llt_report = _json(_core.llt_report)
triple_report = _json(_core.triple_report)
cesaro_report = _json(_core.cesaro_report)
entropy_report = _json(_core.entropy_report)
e_measure_report = _json(_core.e_measure_report)
