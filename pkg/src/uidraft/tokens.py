"""Token estimators used for prompt budgeting and the catalog reduction report.

The default estimator is deliberately vendor-free and deterministic:

* every maximal run of word characters counts as one unit,
* every non-space punctuation character counts as one unit,
* any non-empty unit sequence gets one extra trailing end-of-text token.

So ``"posX, posY, width, height"`` counts 4 words + 3 commas + 1 = 8.
Vendor tokenizers can be registered at runtime and selected by name.
"""

from __future__ import annotations

import re
from typing import Callable

TokenEstimator = Callable[[str], int]

_UNIT_RE = re.compile(r"\w+|[^\w\s]")


def default_estimator(text: str) -> int:
    units = _UNIT_RE.findall(text)
    if not units:
        return 0
    return len(units) + 1


_REGISTRY: dict[str, TokenEstimator] = {"default": default_estimator}


def register_estimator(name: str, fn: TokenEstimator) -> None:
    """Register a tokenizer under `name`, replacing any previous one."""
    _REGISTRY[name] = fn


def get_estimator(name: str = "default") -> TokenEstimator:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"no token estimator registered under {name!r}") from None


def estimate_tokens(text: str, estimator: TokenEstimator | None = None) -> int:
    """Estimate the token count of `text` with `estimator` (default rules above)."""
    fn = estimator or default_estimator
    return fn(text)
