"""Shapes of the public benchmark instances, with synthetic look-alikes.

The benchmark dataset (https://doi.org/10.6084/m9.figshare.12116667) holds
16 fourth-year cohorts; this table records each instance's course/student
counts.  ``synthesize`` builds a random instance with the same shape, for
environments where the real dataset is not available: same new/old course
counts, same student count, every course registered by someone, and - for
all instances except RGD4252 - every student individually within the
default column limits.  RGD4252 is the known infeasible case: it contains
a student whose registrations alone exceed a fixed 13-column budget, so
its look-alike gives one student 14 old courses.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass

from srg.model import Instance, make_instance


@dataclass(frozen=True)
class InstanceProfile:
    name: str
    new_courses: int
    old_courses: int
    students: int
    # registrations forced onto student 0; used to reproduce the
    # over-the-limit student that makes RGD4252 infeasible in fixed mode
    forced_old_registrations: int = 0


BENCHMARK_PROFILES: tuple[InstanceProfile, ...] = (
    InstanceProfile("RGD41107", 28, 15, 140),
    InstanceProfile("RGD4152", 13, 20, 97),
    InstanceProfile("RGD4185", 27, 20, 121),
    InstanceProfile("RGD42118", 8, 0, 25),
    InstanceProfile("RGD4263", 19, 20, 132),
    InstanceProfile("RGD4296", 23, 17, 193),
    InstanceProfile("RGD41118", 10, 1, 18),
    InstanceProfile("RGD4196", 26, 17, 185),
    InstanceProfile("RGD4241", 8, 21, 67),
    InstanceProfile("RGD4274", 20, 23, 147),
    InstanceProfile("RGD4141", 9, 17, 68),
    InstanceProfile("RGD4174", 29, 19, 149),
    InstanceProfile("RGD42107", 26, 16, 123),
    InstanceProfile("RGD4252", 9, 24, 95, forced_old_registrations=14),
    InstanceProfile("RGD4285", 19, 21, 128),
    InstanceProfile("RGD4163", 26, 17, 128),
)


def profile_by_name(name: str) -> InstanceProfile:
    for profile in BENCHMARK_PROFILES:
        if profile.name == name:
            return profile
    raise KeyError(f"unknown benchmark profile {name!r}")


def synthesize(profile: InstanceProfile, seed: int = 0) -> Instance:
    """Random instance with the profile's shape, deterministic per seed.

    Registrations follow a latent-cluster model, mimicking cohorts whose
    students mostly share a curriculum: courses are dealt into per-cluster
    bundles small enough to fit the default column budgets, each student
    samples mainly from one cluster's bundle, and a little cross-cluster
    noise keeps the grouping problem non-trivial.
    """
    rng = random.Random(zlib.crc32(profile.name.encode()) * 100003 + seed)
    course_years = {f"N{i + 1:03d}": 4 for i in range(profile.new_courses)}
    course_years.update({f"O{i + 1:03d}": (i % 3) + 1 for i in range(profile.old_courses)})
    new_ids = [c for c in course_years if c.startswith("N")]
    old_ids = [c for c in course_years if c.startswith("O")]

    # Most of a real cohort follows a curriculum: one to three
    # specialization tracks, each a course bundle small enough for a single
    # sheet, plus common recently-failed courses.  A small misfit tail
    # carries the exotic courses (rare electives, old carried-over
    # retakes), so every course is registered and the interesting packing
    # happens around the tail and the cross-track retakes.
    tracks: list[list[str]] = []
    consumed = 0
    while len(new_ids) - consumed >= 5 and len(tracks) < 5:
        size = min(len(new_ids) - consumed, rng.randint(5, 6))
        tracks.append(new_ids[consumed : consumed + size])
        consumed += size
    if not tracks and new_ids:
        tracks = [new_ids]
        consumed = len(new_ids)
    main_old = old_ids[: min(len(old_ids), rng.randint(2, 4))]
    exotic_new = new_ids[consumed:]
    exotic_old = old_ids[len(main_old):]
    track_weights = [5, 3, 2, 1, 1][: len(tracks)]

    regular = max(
        1,
        profile.students - max(
            round(profile.students * rng.uniform(0.10, 0.18)),
            -(-len(exotic_new) // 5),
            -(-len(exotic_old) // 5),
        ),
    )
    # Old-course retakes concentrate in a handful of frequently-failed
    # courses (the "head"); the rest appear once or twice each.  Exotic
    # new courses ride only with the misfits, so main groups stay pure
    # track unions on the new-course side.
    head = exotic_old[: min(5, len(exotic_old))]

    def retake():
        return rng.choice(head) if rng.random() < 0.8 else rng.choice(exotic_old)

    rosters: list[list[str]] = []
    for i in range(profile.students):
        if i < regular:
            picks = []
            if tracks:
                bundle = rng.choices(tracks, weights=track_weights)[0]
                picks = rng.sample(bundle, rng.randint(max(1, (3 * len(bundle)) // 5), len(bundle)))
            if main_old:
                picks += rng.sample(main_old, rng.randint(0 if picks else 1, min(2, len(main_old))))
            # the occasional carried-over retake outside the curriculum;
            # which carriers share a sheet is what the solvers must decide
            if exotic_old and rng.random() < 0.15:
                extra = retake()
                if extra not in picks:
                    picks.append(extra)
        else:
            j = i - regular
            misfits = profile.students - regular
            picks = exotic_new[j::misfits][:2] + exotic_old[j::misfits][:1]
            if exotic_old:
                extra = retake()
                if extra not in picks:
                    picks.append(extra)
            if tracks:
                bundle = rng.choices(tracks, weights=track_weights)[0]
                picks += rng.sample(bundle, 1)
            if main_old and rng.random() < 0.5:
                picks.append(rng.choice(main_old))
        rosters.append(picks)
    rng.shuffle(rosters)

    registrations: dict[str, list[str]] = {}
    for i, picks in enumerate(rosters):
        sid = f"{profile.name}-{i + 1:04d}"
        if i == 0 and profile.forced_old_registrations:
            picks = rng.sample(old_ids, profile.forced_old_registrations)
            if new_ids:
                picks += rng.sample(new_ids, min(3, len(new_ids)))
        registrations[sid] = picks

    # The shuffle may have dropped courses owned only by the student the
    # forced roster replaced; give them to other students within the caps.
    used = {c for regs in registrations.values() for c in regs}
    students = list(registrations)
    first = 1 if profile.forced_old_registrations else 0
    new_cap = min(13, len(new_ids))
    old_cap = min(13, len(old_ids))
    for cid in course_years:
        if cid in used:
            continue
        is_new = cid.startswith("N")
        cap = new_cap if is_new else old_cap
        for _ in range(20 * profile.students):
            sid = students[rng.randrange(first, len(students))]
            own = registrations[sid]
            kind_count = sum(1 for c in own if c.startswith("N" if is_new else "O"))
            if kind_count < cap and cid not in own:
                own.append(cid)
                break
        else:
            raise RuntimeError(f"could not place course {cid} within per-student limits")

    return make_instance(f"{profile.name}.synth{seed}", 4, course_years, registrations)


def synthesize_suite(seed: int = 0) -> list[Instance]:
    """Look-alikes of all 16 benchmark instances."""
    return [synthesize(p, seed) for p in BENCHMARK_PROFILES]
