"""The fixed attribute taxonomy behind all labelling.

Eleven leaf attributes organised under two branches: nine that target a
person's identity and two that target the computing artifacts people work
with. The tree is exactly three levels deep (root, branch, leaf) and is
immutable; every other module refers to attributes through
:class:`AttributeId`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Branch(enum.Enum):
    """The two top-level groupings of exclusion attributes."""

    IDENTITY_BASED = "identity_based"
    COMPUTING_SPECIFIC = "computing_specific"


class AttributeId(enum.Enum):
    """One of the 11 leaf attributes a message can target.

    Declaration order is the canonical display order used by reports and
    label sorting.
    """

    GENDER = "gender"
    SEXUAL_ORIENTATION = "sexual_orientation"
    ETHNICITY = "ethnicity"
    RELIGION = "religion"
    DISABILITY = "disability"
    LOCATION = "location"
    EMPLOYMENT_STATUS = "employment_status"
    AGE = "age"
    LANGUAGE_ABILITY = "language_ability"
    SOFTWARE = "software"
    HARDWARE = "hardware"

    @property
    def branch(self) -> Branch:
        if self in (AttributeId.SOFTWARE, AttributeId.HARDWARE):
            return Branch.COMPUTING_SPECIFIC
        return Branch.IDENTITY_BASED

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def tag(self) -> str:
        """Compact CamelCase token used in annotation tag lists."""
        return _TAGS[self]

    @property
    def description(self) -> str:
        """One-line meaning of the attribute, shown in legends and tooltips."""
        return _DESCRIPTIONS[self]

    @classmethod
    def from_wire(cls, value: str) -> "AttributeId":
        """Parse the stable wire name (the enum value) back to an attribute."""
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown attribute: {value!r}") from None


_DISPLAY_NAMES = {
    AttributeId.GENDER: "Gender",
    AttributeId.SEXUAL_ORIENTATION: "Sexual orientation",
    AttributeId.ETHNICITY: "Ethnicity",
    AttributeId.RELIGION: "Religion",
    AttributeId.DISABILITY: "Disability",
    AttributeId.LOCATION: "Location",
    AttributeId.EMPLOYMENT_STATUS: "Employment status",
    AttributeId.AGE: "Age",
    AttributeId.LANGUAGE_ABILITY: "Language ability",
    AttributeId.SOFTWARE: "Software",
    AttributeId.HARDWARE: "Hardware",
}

_TAGS = {
    AttributeId.GENDER: "Gender",
    AttributeId.SEXUAL_ORIENTATION: "SexualOrientation",
    AttributeId.ETHNICITY: "Ethnicity",
    AttributeId.RELIGION: "Religion",
    AttributeId.DISABILITY: "Disability",
    AttributeId.LOCATION: "Location",
    AttributeId.EMPLOYMENT_STATUS: "EmploymentStatus",
    AttributeId.AGE: "Age",
    AttributeId.LANGUAGE_ABILITY: "LanguageAbility",
    AttributeId.SOFTWARE: "Software",
    AttributeId.HARDWARE: "Hardware",
}

_DESCRIPTIONS = {
    AttributeId.GENDER: "targets a person's gender or gender identity",
    AttributeId.SEXUAL_ORIENTATION: "targets a person's sexual orientation",
    AttributeId.ETHNICITY: "targets the ethnic group a person belongs to",
    AttributeId.RELIGION: "targets a person's religious beliefs or community",
    AttributeId.DISABILITY: "targets a physical or mental disability",
    AttributeId.LOCATION: "targets the place or country a person is from or lives in",
    AttributeId.EMPLOYMENT_STATUS: "targets whether and how a person is employed",
    AttributeId.AGE: "targets a person's age or age group",
    AttributeId.LANGUAGE_ABILITY: "targets a person's fluency or skill in a language",
    AttributeId.SOFTWARE: "derides a specific software product or the skills around it",
    AttributeId.HARDWARE: "derides a specific hardware product or platform",
}

IDENTITY_ATTRIBUTES: tuple[AttributeId, ...] = tuple(
    a for a in AttributeId if a.branch is Branch.IDENTITY_BASED
)
COMPUTING_ATTRIBUTES: tuple[AttributeId, ...] = tuple(
    a for a in AttributeId if a.branch is Branch.COMPUTING_SPECIFIC
)


@dataclass(frozen=True)
class Taxonomy:
    """The full three-level attribute tree with human-readable metadata."""

    root: str = "Social exclusion attributes"
    branches: tuple[tuple[Branch, tuple[AttributeId, ...]], ...] = field(
        default=(
            (Branch.IDENTITY_BASED, IDENTITY_ATTRIBUTES),
            (Branch.COMPUTING_SPECIFIC, COMPUTING_ATTRIBUTES),
        )
    )

    def leaves(self) -> tuple[AttributeId, ...]:
        return tuple(a for _, attrs in self.branches for a in attrs)

    def to_dict(self) -> dict:
        """JSON-ready tree, stable ordering."""
        return {
            "root": self.root,
            "branches": [
                {
                    "name": branch.value,
                    "attributes": [
                        {
                            "id": a.value,
                            "name": a.display_name,
                            "description": a.description,
                        }
                        for a in attrs
                    ],
                }
                for branch, attrs in self.branches
            ],
        }


TAXONOMY = Taxonomy()
