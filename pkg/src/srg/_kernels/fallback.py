"""Pure Python kernels; the reference semantics for the compiled backend.

The compiled backend (native.pyx) mirrors this module operation for
operation, including iteration order and float accumulation order, so both
backends produce bit-identical results for the same inputs.
"""

from __future__ import annotations

BACKEND_NAME = "fallback"


def evaluate_labels(packed, labels, new_limit, old_limit, total_limit, dynamic):
    """Penalty components of a full label vector.

    labels[i] is student i's group label (any value in [0, m-1]; labels
    need not be dense) or a negative value when unassigned.  Returns
    (unfit, size, unassigned, group_count).
    """
    m = packed.num_students
    new_union = [0] * m
    old_union = [0] * m
    sizes = [0] * m
    unassigned = 0
    new_masks = packed.new_masks
    old_masks = packed.old_masks
    for i in range(m):
        g = labels[i]
        if g < 0:
            unassigned += 1
            continue
        sizes[g] += 1
        new_union[g] |= new_masks[i]
        old_union[g] |= old_masks[i]

    unfit = 0
    size_penalty = 0
    groups = 0
    for g in range(m):
        s = sizes[g]
        if s == 0:
            continue
        groups += 1
        new_count = new_union[g].bit_count()
        old_count = old_union[g].bit_count()
        if dynamic:
            over = new_count + old_count - total_limit
            penalty = over if over > 0 else 0
        else:
            penalty = (new_count - new_limit if new_count > new_limit else 0) + (
                old_count - old_limit if old_count > old_limit else 0
            )
        unfit += penalty * s
        size_penalty += (m - s) * s
    return unfit, size_penalty, unassigned, groups


def _fits(new_mask, old_mask, group_new, group_old, new_limit, old_limit, total_limit, dynamic):
    new_count = (group_new | new_mask).bit_count()
    old_count = (group_old | old_mask).bit_count()
    if dynamic:
        return new_count + old_count <= total_limit
    return new_count <= new_limit and old_count <= old_limit


def _group_penalty(new_count, old_count, new_limit, old_limit, total_limit, dynamic):
    if dynamic:
        over = new_count + old_count - total_limit
        return over if over > 0 else 0
    return (new_count - new_limit if new_count > new_limit else 0) + (
        old_count - old_limit if old_count > old_limit else 0
    )


def ant_traverse(packed, trails, eta_alpha, beta, new_limit, old_limit, total_limit, dynamic, uniforms):
    """One ant's walk: build a complete slot assignment for all students.

    trails is the (slots x students) pheromone matrix; eta_alpha[s] is the
    precomputed heuristic desirability factor of student s; uniforms holds
    one pre-drawn uniform per assignment step (at most m are consumed).

    A new group is opened only as a fallback, mirroring the greedy
    constructors: each step draws an (unassigned student, slot) pair with
    probability proportional to eta_alpha[s] * trails[g][s] ** beta, where
    the slots in play for a student are the already-opened ones it fits
    into, or the next unopened slot when it fits none of them.  Students
    left without any violation-free slot at the end (all slots in use or
    personally over the limits) are placed, in index order, on the slot
    whose unfit-penalty increase is smallest (ties: higher trail, then
    lower slot index).

    Returns the slot label list (length m, every student assigned).
    """
    m = packed.num_students
    n = len(trails)
    new_masks = packed.new_masks
    old_masks = packed.old_masks
    trail_rows = [[float(v) for v in row] for row in trails]
    if beta == 1.0:
        weights = [[eta_alpha[s] * row[s] for s in range(m)] for row in trail_rows]
    else:
        weights = [[eta_alpha[s] * row[s] ** beta for s in range(m)] for row in trail_rows]

    labels = [-1] * m
    group_new = [0] * n
    group_old = [0] * n
    group_size = [0] * n
    solo_fits = [
        _fits(new_masks[s], old_masks[s], 0, 0, new_limit, old_limit, total_limit, dynamic)
        for s in range(m)
    ]
    feasible = [list(solo_fits) for _ in range(n)]
    open_fits = [0] * m  # per student: opened slots it currently fits into

    opened = 0
    assigned = 0
    step = 0
    while assigned < m:
        fresh = opened if opened < n else -1
        total = 0.0
        for g in range(opened):
            w_row = weights[g]
            f_row = feasible[g]
            for s in range(m):
                if labels[s] < 0 and f_row[s]:
                    total += w_row[s]
        if fresh >= 0:
            w_row = weights[fresh]
            f_row = feasible[fresh]
            for s in range(m):
                if labels[s] < 0 and open_fits[s] == 0 and f_row[s]:
                    total += w_row[s]
        if total <= 0.0:
            break
        threshold = uniforms[step] * total
        step += 1
        cumulative = 0.0
        chosen_g = chosen_s = -1
        last_g = last_s = -1
        for g in range(opened):
            w_row = weights[g]
            f_row = feasible[g]
            for s in range(m):
                if labels[s] < 0 and f_row[s]:
                    last_g, last_s = g, s
                    cumulative += w_row[s]
                    if cumulative > threshold:
                        chosen_g, chosen_s = g, s
                        break
            if chosen_g >= 0:
                break
        if chosen_g < 0 and fresh >= 0:
            w_row = weights[fresh]
            f_row = feasible[fresh]
            for s in range(m):
                if labels[s] < 0 and open_fits[s] == 0 and f_row[s]:
                    last_g, last_s = fresh, s
                    cumulative += w_row[s]
                    if cumulative > threshold:
                        chosen_g, chosen_s = fresh, s
                        break
        if chosen_g < 0:  # float round-off guard: fall back to the last pair
            chosen_g, chosen_s = last_g, last_s

        labels[chosen_s] = chosen_g
        if chosen_g == opened:
            opened += 1
            newly_opened = True
        else:
            newly_opened = False
        group_new[chosen_g] |= new_masks[chosen_s]
        group_old[chosen_g] |= old_masks[chosen_s]
        group_size[chosen_g] += 1
        assigned += 1
        gn = group_new[chosen_g]
        go = group_old[chosen_g]
        f_row = feasible[chosen_g]
        for s in range(m):
            if labels[s] < 0:
                fits_now = _fits(new_masks[s], old_masks[s], gn, go, new_limit, old_limit, total_limit, dynamic)
                if newly_opened:
                    open_fits[s] += fits_now
                else:
                    open_fits[s] += fits_now - f_row[s]
                f_row[s] = fits_now

    # Dead ends: place leftover students where they do the least damage.
    for s in range(m):
        if labels[s] >= 0:
            continue
        best_g = -1
        best_delta = 0
        best_trail = 0.0
        for g in range(n):
            new_count = (group_new[g] | new_masks[s]).bit_count()
            old_count = (group_old[g] | old_masks[s]).bit_count()
            after = _group_penalty(new_count, old_count, new_limit, old_limit, total_limit, dynamic)
            current = _group_penalty(
                group_new[g].bit_count(), group_old[g].bit_count(),
                new_limit, old_limit, total_limit, dynamic,
            )
            delta = after * (group_size[g] + 1) - current * group_size[g]
            trail = trail_rows[g][s]
            if best_g < 0 or delta < best_delta or (delta == best_delta and trail > best_trail):
                best_g, best_delta, best_trail = g, delta, trail
        labels[s] = best_g
        group_new[best_g] |= new_masks[s]
        group_old[best_g] |= old_masks[s]
        group_size[best_g] += 1
    return labels
