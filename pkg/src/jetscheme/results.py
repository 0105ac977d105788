"""Numeric results that carry their certification status."""

from dataclasses import dataclass, field


@dataclass
class Certified:
    value: object
    certified: bool = True
    notes: list = field(default_factory=list)

    def to_json(self):
        v = self.value
        if hasattr(v, "to_json"):
            v = v.to_json()
        elif isinstance(v, float):
            v = str(v)
        return {"value": v, "certified": bool(self.certified), "hypothesis_notes": list(self.notes)}

    def __int__(self):
        return int(self.value)
