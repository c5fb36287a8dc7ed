"""Bound command: evaluates main_bound(k, ell) under a digit budget and dumps its expression tree."""

from __future__ import annotations

from typing import Optional

from holebound.bounds import digit_budget, main_bound
from holebound.handlers.validation import ExitCode, UsageError, emit
from holebound.storage import write_json

DECIMAL_LIMIT = 4000


def handle_bound(
    k: int,
    ell: int,
    digits: int,
    tree_output: Optional[str] = None,
    output: Optional[str] = None,
) -> ExitCode:
    if k < 1 or ell < 4:
        raise UsageError(f"bound needs k >= 1 and ell >= 4, got k={k}, ell={ell}")
    if digits < 1:
        raise UsageError(f"--digits must be positive, got {digits}")
    with digit_budget(digits):
        expr = main_bound(k, ell)
    payload: dict = {"k": k, "ell": ell, "summary": expr.summary()}
    if expr.exact:
        n_digits = expr.digits()
        payload["value"] = str(expr.value) if n_digits <= DECIMAL_LIMIT else hex(expr.value)
    else:
        payload["value"] = None
    if tree_output:
        write_json(tree_output, expr.to_json())
    emit(payload, output)
    return ExitCode.OK
