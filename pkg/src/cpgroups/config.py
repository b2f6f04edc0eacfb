from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # largest group any element-level operation accepts
    max_order: int = 4096
    # exhaustive associativity / homomorphism verification up to this order
    verify_order: int = 512
    # all_subgroups refuses groups larger than this
    max_enum: int = 128
    # isomorphism search cap
    max_iso: int = 64

    @classmethod
    def from_env(cls) -> "Limits":
        base = cls()
        return cls(
            max_order=int(os.environ.get("CPGROUPS_MAX_ORDER", base.max_order)),
            verify_order=int(os.environ.get("CPGROUPS_VERIFY_ORDER", base.verify_order)),
            max_enum=int(os.environ.get("CPGROUPS_MAX_ENUM", base.max_enum)),
            max_iso=int(os.environ.get("CPGROUPS_MAX_ISO", base.max_iso)),
        )


DEFAULT_LIMITS = Limits()
