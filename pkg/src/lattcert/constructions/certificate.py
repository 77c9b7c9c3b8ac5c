"""Replayable verification certificates.

Every checklist item names a registered check and the JSON arguments it
ran on; replaying the item re-runs the check from those arguments alone.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from lattcert.errors import InsufficientPrecision, LattcertError, ResourceError

SCHEMA = 1
CHECKS = {}

VERIFIED, FAILED, PARTIAL = "Verified", "Failed", "Partial"


def register(name):
    def deco(fn):
        CHECKS[name] = fn
        return fn
    return deco


def run_check(name, args):
    """(passed, witness) for a registered check; library errors count as failures."""
    try:
        passed, witness = CHECKS[name](**args)
    except (InsufficientPrecision, ResourceError):
        raise
    except LattcertError as exc:
        return False, {"error": type(exc).__name__, "message": str(exc)}
    return bool(passed), witness


@dataclass
class CheckItem:
    name: str
    anchor: str
    check: str
    args: dict
    status: str
    witness: dict
    soft: bool = False  # a soft failure downgrades to Partial instead of Failed

    def to_json(self) -> dict:
        return {
            "name": self.name, "anchor": self.anchor, "check": self.check, "args": self.args,
            "status": self.status, "witness": self.witness, "soft": self.soft,
        }


@dataclass
class Certificate:
    tag: str
    inputs: dict
    checklist: list = field(default_factory=list)
    group: dict | None = None
    envelope: dict | None = None
    notes: list = field(default_factory=list)
    config: dict | None = None

    def add(self, name, anchor, check, args, soft=False) -> CheckItem:
        passed, witness = run_check(check, args)
        item = CheckItem(name, anchor, check, args, "passed" if passed else "failed", _jsonable(witness), soft)
        self.checklist.append(item)
        return item

    def add_failure(self, name, anchor, message):
        """Record a condition that could not even be set up."""
        item = CheckItem(name, anchor, "unavailable", {}, "failed", {"message": message})
        self.checklist.append(item)
        return item

    def item(self, name) -> CheckItem:
        return next(i for i in self.checklist if i.name == name)

    @property
    def overall(self) -> str:
        failed = [i for i in self.checklist if i.status != "passed"]
        if not failed:
            return VERIFIED
        return PARTIAL if all(i.soft for i in failed) else FAILED

    def passed_count(self) -> int:
        return sum(i.status == "passed" for i in self.checklist)

    def failed_names(self) -> list:
        return [i.name for i in self.checklist if i.status != "passed"]

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "tag": self.tag,
            "inputs": _jsonable(self.inputs),
            "checklist": [i.to_json() for i in self.checklist],
            "overall": self.overall,
            "passed": self.passed_count(),
            "total": len(self.checklist),
        }
        if self.group is not None:
            out["group"] = _jsonable(self.group)
        if self.envelope is not None:
            out["envelope"] = _jsonable(self.envelope)
        if self.notes:
            out["notes"] = list(self.notes)
        if self.config is not None:
            out["config"] = _jsonable(self.config)
        return out

    def dumps(self) -> str:
        return canonical_json(self.to_json())


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return str(x)


def replay(item: dict) -> bool:
    """Re-run one serialized checklist item; True when the status is reproduced."""
    if item["check"] == "unavailable":
        return item["status"] == "failed"
    passed, _ = run_check(item["check"], item["args"])
    return ("passed" if passed else "failed") == item["status"]


def validate_schema(doc: dict) -> list[str]:
    """Problems with a certificate document; empty when it is well formed."""
    problems = []
    for key, kind in (("schema", int), ("tag", str), ("inputs", dict), ("checklist", list), ("overall", str)):
        if not isinstance(doc.get(key), kind):
            problems.append(f"missing or mistyped field {key!r}")
    if doc.get("schema") != SCHEMA:
        problems.append("unknown schema version")
    if doc.get("overall") not in (VERIFIED, FAILED, PARTIAL):
        problems.append("bad overall status")
    for i, item in enumerate(doc.get("checklist", [])):
        for key in ("name", "anchor", "check", "args", "status", "witness"):
            if key not in item:
                problems.append(f"checklist[{i}] lacks {key!r}")
        if item.get("status") not in ("passed", "failed"):
            problems.append(f"checklist[{i}] has bad status")
    statuses = [i.get("status") for i in doc.get("checklist", [])]
    if (doc.get("overall") == VERIFIED) != all(s == "passed" for s in statuses):
        problems.append("overall status disagrees with checklist")
    return problems
