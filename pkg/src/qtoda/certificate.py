"""Serializable records of verified claims.

A certificate carries enough data (inputs, witness elements in canonical
text, residuals) for ``verify --replay`` to recompute every residual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


@dataclass
class Certificate:
    claim: str
    inputs: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)
    residuals: dict = dc_field(default_factory=dict)
    kernel_dim: int | None = None
    scalars: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    passed: bool = True
    version: str = TOOL_VERSION
    schema: int = SCHEMA_VERSION

    def record(self, name: str, ok: bool, **detail: Any) -> bool:
        """Append one named check; a failing check fails the certificate."""
        entry = {"name": name, "ok": bool(ok)}
        entry.update(detail)
        self.checks.append(entry)
        if not ok:
            self.passed = False
        return bool(ok)

    def failed_checks(self) -> list:
        """Asserted checks that failed; informational entries never count."""
        return [c for c in self.checks if not c["ok"] and c.get("asserted", True)]

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "claim": self.claim,
            "inputs": self.inputs,
            "witnesses": self.witnesses,
            "residuals": self.residuals,
            "kernel_dim": self.kernel_dim,
            "scalars": self.scalars,
            "checks": self.checks,
            "passed": self.passed,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
        return cls(
            claim=data["claim"],
            inputs=data.get("inputs", {}),
            witnesses=data.get("witnesses", {}),
            residuals=data.get("residuals", {}),
            kernel_dim=data.get("kernel_dim"),
            scalars=data.get("scalars", {}),
            checks=data.get("checks", []),
            passed=data.get("passed", True),
            version=data.get("version", TOOL_VERSION),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def read(cls, path) -> "Certificate":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())
