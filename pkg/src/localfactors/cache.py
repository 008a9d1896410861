"""Process-wide memo switch.

Factor computations memoize Gauss sums and unit discrete logs keyed by exact
character/element data.  Purity audits and lift fuzzing must observe every
coefficient read, so they run under `no_cache()`.
"""

import contextvars

_ENABLED: contextvars.ContextVar[bool] = contextvars.ContextVar(
    "localfactors_cache_enabled", default=True
)


def enabled() -> bool:
    return _ENABLED.get()


class no_cache:
    def __enter__(self):
        self._token = _ENABLED.set(False)
        return self

    def __exit__(self, *exc):
        _ENABLED.reset(self._token)
        return False
