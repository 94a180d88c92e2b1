"""Domain model for the student result grouping problem.

A cohort of students has taken exams for a set of courses; each course was
introduced in a particular year of study.  Result sheets list students in
rows and courses in columns, and a sheet stays legible only if the number
of course columns is bounded.  The grouping problem is to partition the
cohort into as few groups as possible so that every group's union of
registered courses fits the column limits.

Courses are classified relative to the cohort: a course introduced in the
cohort's current year of study is *new*, anything earlier is *old*.  New
and old courses get separate column budgets on the sheet (13 each by
default), or a single pooled budget of 26 when the split is flexible.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Optional, Sequence

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Raised for malformed instance files; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LimitMode(str, Enum):
    """How column limits apply to a group's course union."""

    FIXED = "fixed"  # separate new/old budgets
    DYNAMIC = "dynamic"  # one pooled budget, split chosen per group afterwards


@dataclass(frozen=True)
class ColumnLimits:
    """Column budgets for one result-sheet group."""

    new_limit: int = 13
    old_limit: int = 13
    total_limit: int = 26
    mode: LimitMode = LimitMode.FIXED

    def __post_init__(self):
        if self.new_limit <= 0 or self.old_limit <= 0 or self.total_limit <= 0:
            raise ValueError("column limits must be positive")


@dataclass(frozen=True)
class Course:
    id: str
    intro_year: int


@dataclass(frozen=True)
class Student:
    id: str
    registrations: frozenset[str]


@dataclass(eq=False)
class Instance:
    """One cohort: students, their registrations, and course metadata.

    Immutable after construction; safe to share across concurrent solver
    runs.  Student order is the input order and is the deterministic
    tie-break basis everywhere.
    """

    name: str
    cohort_year: int
    courses: dict[str, Course]
    students: list[Student]
    limits: ColumnLimits = field(default_factory=ColumnLimits)

    def __post_init__(self):
        if not self.students:
            raise ValueError("instance has no students")
        if self.cohort_year < 1:
            raise ValueError("cohort year must be >= 1")
        seen = set()
        for s in self.students:
            if s.id in seen:
                raise ValueError(f"duplicate student id {s.id!r}")
            seen.add(s.id)
            if not s.registrations:
                raise ValueError(f"student {s.id!r} has no registrations")
            for c in s.registrations:
                if c not in self.courses:
                    raise ValueError(f"student {s.id!r} registered unknown course {c!r}")
        self._packed = None

    def is_new(self, course_id: str) -> bool:
        return self.courses[course_id].intro_year == self.cohort_year

    @property
    def new_course_ids(self) -> list[str]:
        return [c for c in self.courses if self.is_new(c)]

    @property
    def old_course_ids(self) -> list[str]:
        return [c for c in self.courses if not self.is_new(c)]

    @property
    def num_students(self) -> int:
        return len(self.students)

    def student_index(self) -> dict[str, int]:
        return {s.id: i for i, s in enumerate(self.students)}

    def packed(self):
        """Bit-packed registration view used by the solver kernels (cached)."""
        if self._packed is None:
            from srg._kernels.packed import PackedInstance

            self._packed = PackedInstance.from_instance(self)
        return self._packed

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and self.cohort_year == other.cohort_year
            and self.courses == other.courses
            and self.students == other.students
            and self.limits == other.limits
        )


def make_instance(
    name: str,
    cohort_year: int,
    course_years: dict[str, int],
    registrations: dict[str, Iterable[str]],
    limits: ColumnLimits | None = None,
) -> Instance:
    """Build an Instance from plain dicts (test and generator convenience)."""
    courses = {cid: Course(cid, year) for cid, year in course_years.items()}
    students = [Student(sid, frozenset(regs)) for sid, regs in registrations.items()]
    return Instance(name, cohort_year, courses, students, limits or ColumnLimits())


# ---------------------------------------------------------------------------
# Instance files: one registration per line, "student,course,year" (comma or
# tab separated), optional header row.


def parse_instance(
    source: IO[str] | Iterable[str] | str,
    cohort_year: int | None = None,
    name: str = "",
) -> Instance:
    """Parse registration rows into an Instance.

    ``source`` is a text stream, an iterable of lines, or the file content
    itself.  The cohort year defaults to the maximum year seen in the file;
    pass ``cohort_year`` to override.  A header row is detected (and
    skipped) when the first row's year field is not an integer.  Duplicate
    (student, course) rows are deduplicated silently.
    """
    if isinstance(source, str):
        source = source.splitlines()

    regs: dict[str, dict[str, None]] = {}  # student -> ordered course set
    years: dict[str, int] = {}  # course -> intro year, in first-seen order
    year_line: dict[str, int] = {}
    max_year = 0

    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in (line.split("\t") if "\t" in line else line.split(","))]
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields (student, course, year), got {len(fields)}", lineno)
        sid, cid, year_text = fields
        try:
            year = int(year_text)
        except ValueError:
            if lineno == 1:
                continue  # header row
            raise ParseError(f"year is not an integer: {year_text!r}", lineno) from None
        if year < 1:
            raise ParseError(f"year must be >= 1, got {year}", lineno)
        if not sid or not cid:
            raise ParseError("empty student or course id", lineno)
        if cid in years and years[cid] != year:
            raise ParseError(
                f"course {cid!r} listed with year {year} but line {year_line[cid]} says {years[cid]}",
                lineno,
            )
        years.setdefault(cid, year)
        year_line.setdefault(cid, lineno)
        regs.setdefault(sid, {})[cid] = None
        max_year = max(max_year, year)

    if not regs:
        raise ParseError("no registration rows found")

    cohort = cohort_year if cohort_year is not None else max_year
    if max_year > cohort:
        # Tolerated: such rows only affect new/old classification.
        log.warning(
            "instance %s: courses introduced after cohort year %d (max year %d)",
            name or "<stream>", cohort, max_year,
        )
    return make_instance(
        name,
        cohort,
        years,
        {sid: list(courses) for sid, courses in regs.items()},
    )


def load_instance(path, cohort_year: int | None = None) -> Instance:
    import os

    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh, cohort_year=cohort_year, name=os.path.splitext(os.path.basename(path))[0])


def serialize_instance(instance: Instance) -> str:
    """Emit the row format accepted by parse_instance (round-trip safe)."""
    order = {cid: i for i, cid in enumerate(instance.courses)}
    lines = []
    for s in instance.students:
        for cid in sorted(s.registrations, key=order.__getitem__):
            lines.append(f"{s.id},{cid},{instance.courses[cid].intro_year}")
    return "\n".join(lines) + "\n"


def course_profile(instance: Instance, members: Iterable[int]) -> tuple[int, int]:
    """Unique (new, old) course counts over the union of members' registrations."""
    new_union: set[str] = set()
    old_union: set[str] = set()
    for i in members:
        if not 0 <= i < instance.num_students:
            raise ValueError(f"student index {i} out of range")
        for cid in instance.students[i].registrations:
            (new_union if instance.is_new(cid) else old_union).add(cid)
    return len(new_union), len(old_union)


# ---------------------------------------------------------------------------
# Groupings


@dataclass(eq=False)
class Grouping:
    """A (possibly partial) assignment of students to dense group indices.

    ``assignment[i]`` is student i's group index, or None when unassigned.
    Group indices are dense (0..k-1 with no empty group); use
    :meth:`from_labels` to build one from arbitrary labels.
    """

    instance: Instance
    assignment: tuple[Optional[int], ...]

    @classmethod
    def from_labels(cls, instance: Instance, labels: Sequence[int]) -> "Grouping":
        """Relabel arbitrary group labels densely, in order of first appearance.

        Negative labels mean unassigned.
        """
        if len(labels) != instance.num_students:
            raise ValueError("label vector length does not match student count")
        remap: dict[int, int] = {}
        assignment: list[Optional[int]] = []
        for raw in labels:
            g = int(raw)
            if g < 0:
                assignment.append(None)
            else:
                assignment.append(remap.setdefault(g, len(remap)))
        return cls(instance, tuple(assignment))

    @property
    def group_count(self) -> int:
        return len({g for g in self.assignment if g is not None})

    @property
    def groups(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.group_count)]
        for i, g in enumerate(self.assignment):
            if g is not None:
                out[g].append(i)
        return out

    @property
    def unassigned(self) -> list[int]:
        return [i for i, g in enumerate(self.assignment) if g is None]

    def is_complete(self) -> bool:
        return all(g is not None for g in self.assignment)

    def labels(self) -> list[int]:
        return [-1 if g is None else g for g in self.assignment]

    def structural_violations(self) -> list[str]:
        """Check the dense-index and no-empty-group invariants."""
        problems = []
        used = {g for g in self.assignment if g is not None}
        if used:
            k = max(used) + 1
            missing = set(range(k)) - used
            if missing:
                problems.append(f"empty group indices in dense range: {sorted(missing)}")
        return problems

    def to_json_dict(self) -> dict:
        return {
            "instance": self.instance.name,
            "groups": [[self.instance.students[i].id for i in g] for g in self.groups],
            "unassigned": [self.instance.students[i].id for i in self.unassigned],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def __eq__(self, other):
        if not isinstance(other, Grouping):
            return NotImplemented
        return self.instance is other.instance and self.assignment == other.assignment


def validate_groups(
    instance: Instance,
    groups: Sequence[Sequence[int]],
    limits: ColumnLimits | None = None,
) -> list[str]:
    """Check the five grouping constraints over explicit member lists.

    Returns one message per violated constraint (empty list = feasible):
    every student assigned, no student in two groups, and per-group course
    unions within the pooled, new, and old column limits.  The individual
    and pooled limits are always all checked, regardless of limit mode.
    """
    limits = limits or instance.limits
    violations = []
    seen: dict[int, int] = {}
    for gi, members in enumerate(groups):
        for i in members:
            if not 0 <= i < instance.num_students:
                violations.append(f"group {gi} references unknown student index {i}")
                continue
            if i in seen:
                violations.append(
                    f"constraint 2: student {instance.students[i].id} in both group {seen[i]} and group {gi}"
                )
            else:
                seen[i] = gi
    missing = [instance.students[i].id for i in range(instance.num_students) if i not in seen]
    if missing:
        violations.append(f"constraint 1: {len(missing)} student(s) unassigned: {missing}")
    for gi, members in enumerate(groups):
        new_count, old_count = course_profile(instance, [i for i in members if 0 <= i < instance.num_students])
        if new_count + old_count > limits.total_limit:
            violations.append(
                f"constraint 3: group {gi} has {new_count + old_count} unique courses (limit {limits.total_limit})"
            )
        if new_count > limits.new_limit:
            violations.append(
                f"constraint 4: group {gi} has {new_count} unique new courses (limit {limits.new_limit})"
            )
        if old_count > limits.old_limit:
            violations.append(
                f"constraint 5: group {gi} has {old_count} unique old courses (limit {limits.old_limit})"
            )
    return violations


def groups_from_json(instance: Instance, data: dict) -> list[list[int]]:
    """Resolve a serialized grouping's student ids to indices.

    Unknown student ids raise ParseError; reported as validation failures
    by the check command.
    """
    index = instance.student_index()
    groups = []
    for gi, members in enumerate(data.get("groups", [])):
        row = []
        for sid in members:
            sid = str(sid)
            if sid not in index:
                raise ParseError(f"group {gi} references unknown student {sid!r}")
            row.append(index[sid])
        groups.append(row)
    return groups


# ---------------------------------------------------------------------------
# Synthetic instances


def generate_instance(
    students: int,
    new_courses: int,
    old_courses: int,
    min_regs: int,
    max_regs: int,
    seed: int,
    name: str | None = None,
) -> Instance:
    """Generate a random instance, deterministic for a fixed seed.

    The cohort is a fourth-year one: new courses sit at year 4, old courses
    cycle over years 1-3.  Every student draws a uniform registration count
    in [min_regs, max_regs] and samples that many distinct courses.
    """
    total = new_courses + old_courses
    if students < 1 or total < 1:
        raise ValueError("need at least one student and one course")
    if new_courses < 0 or old_courses < 0:
        raise ValueError("course counts must be non-negative")
    if not 1 <= min_regs <= max_regs:
        raise ValueError("registration range must satisfy 1 <= min <= max")
    if max_regs > total:
        raise ValueError(f"registration range up to {max_regs} exceeds the {total} available courses")

    rng = random.Random(seed)
    course_years = {f"N{i + 1:03d}": 4 for i in range(new_courses)}
    course_years.update({f"O{i + 1:03d}": (i % 3) + 1 for i in range(old_courses)})
    ids = list(course_years)
    registrations = {
        f"S{i + 1:04d}": rng.sample(ids, rng.randint(min_regs, max_regs)) for i in range(students)
    }
    return make_instance(
        name or f"gen-{students}x{total}-seed{seed}",
        4,
        course_years,
        registrations,
    )
