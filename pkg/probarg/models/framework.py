# probarg/models/framework.py
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator
from typing import Dict, FrozenSet, Tuple
import re

from probarg.core.errors import DuplicateArgument, UnknownArgument

ARGUMENT_NAME = re.compile(r"^[A-Za-z0-9_]+$")


class ArgumentationFramework(BaseModel):
    """Directed attack graph over named arguments.

    Argument order is declaration order; bit i of a subset mask and position i
    of every aligned vector refer to ``arguments[i]``.
    """

    model_config = ConfigDict(frozen=True)

    arguments: Tuple[str, ...] = ()
    attacks: Tuple[Tuple[str, str], ...] = ()

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _attackers: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _attackees: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())

    @field_validator("arguments")
    @classmethod
    def _valid_names(cls, arguments: Tuple[str, ...]) -> Tuple[str, ...]:
        seen = set()
        for name in arguments:
            if not ARGUMENT_NAME.match(name):
                raise ValueError(f"invalid argument name {name!r}")
            if name in seen:
                raise DuplicateArgument(name)
            seen.add(name)
        return arguments

    @model_validator(mode="after")
    def _valid_attacks(self) -> "ArgumentationFramework":
        known = set(self.arguments)
        seen = set()
        for attacker, attackee in self.attacks:
            for name in (attacker, attackee):
                if name not in known:
                    raise UnknownArgument(name)
            if (attacker, attackee) in seen:
                raise ValueError(f"duplicate attack ({attacker}, {attackee})")
            seen.add((attacker, attackee))
        return self

    def model_post_init(self, __context) -> None:
        index = {name: i for i, name in enumerate(self.arguments)}
        attackers = [[] for _ in self.arguments]
        attackees = [[] for _ in self.arguments]
        for attacker, attackee in self.attacks:
            attackers[index[attackee]].append(index[attacker])
            attackees[index[attacker]].append(index[attackee])
        self._index = index
        self._attackers = tuple(tuple(sorted(set(a))) for a in attackers)
        self._attackees = tuple(tuple(sorted(set(a))) for a in attackees)

    @property
    def size(self) -> int:
        return len(self.arguments)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownArgument(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def attacker_indices(self, i: int) -> Tuple[int, ...]:
        return self._attackers[i]

    def attackee_indices(self, i: int) -> Tuple[int, ...]:
        return self._attackees[i]

    def attacker_names(self, name: str) -> FrozenSet[str]:
        return frozenset(self.arguments[j] for j in self._attackers[self.index_of(name)])

    def unattacked_indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self._attackers[i])

    def attack_indices(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((self._index[a], self._index[b]) for a, b in self.attacks)
