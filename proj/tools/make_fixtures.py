#!/usr/bin/env python3
"""Regenerate the benchmark fixtures under data/.

The output is fully determined by SEED, so rerunning the script reproduces
the shipped files byte for byte. Only the standard library is used.

Files written:
  catalog.csv    62 terms, each with the same five IMDb attribute types
  intrinsic.csv  near-uniform system scores (the prior)
  answers.csv    the relevant type per term
  explicit.csv   multi-choice feedback, 10 workers per term
  feedback.csv   single-choice feedback with the top intrinsic option as
                 default, 10 workers per term
"""

import argparse
import math
import pathlib
import random

SEED = 2016
LABELS = ["CHAR_NAME.name", "NAME.name", "TITLE.title", "MOVIE_INFO.info", "ROLE_TYPE.role"]
K = len(LABELS)

TERMS = [
    "tom hanks", "indiana jones", "gone with the wind", "harrison ford", "star wars",
    "james bond", "meryl streep", "the godfather", "darth vader", "steven spielberg",
    "casablanca", "sherlock holmes", "clint eastwood", "titanic", "batman",
    "audrey hepburn", "pulp fiction", "forrest gump", "marlon brando", "the matrix",
    "john wayne", "vito corleone", "alfred hitchcock", "psycho", "rocky balboa",
    "grace kelly", "jaws", "hannibal lecter", "stanley kubrick", "vertigo",
    "ellen ripley", "humphrey bogart", "citizen kane", "rick blaine", "marilyn monroe",
    "the wizard of oz", "dorothy gale", "orson welles", "schindler", "scarlett ohara",
    "charlie chaplin", "the tramp", "jack nicholson", "the shining", "travis bickle",
    "robert de niro", "taxi driver", "norman bates", "ingrid bergman", "ben hur",
    "judah", "spartacus", "kirk douglas", "lawrence of arabia", "peter otoole",
    "zorro", "tarzan", "frankenstein", "boris karloff", "dracula",
    "bela lugosi", "uncredited",
]

# Reference scores for "tom hanks"; relevant type NAME.name.
TOM_HANKS = [0.2793, 0.2346, 0.2207, 0.1508, 0.1145]
TOM_HANKS_FEEDBACK = [1, 8, 0, 1, 0]

# Rank of the relevant option in the intrinsic ranking: 37 first, 20 second,
# 4 third, 1 fifth. P@1 = 37/62 and MRR = 0.783.
RANK_PLAN = [1] * 37 + [2] * 20 + [3] * 4 + [5] * 1
TARGET_MEAN_ENTROPY = 0.9847

# Implicit count shapes, largest first. "hit" shapes put the largest count on
# the relevant option; "miss" shapes put it on the intrinsic default.
HIT_SHAPES = [[10]] * 36 + [[9, 1]] * 10 + [[8, 1, 1]] * 5 + [[7, 2, 1]] * 2
MISS_SHAPES = [[4, 3, 2, 1], [3, 2, 2, 2, 1], [4, 2, 2, 1, 1], [3, 3, 2, 1, 1],
               [4, 3, 1, 1, 1], [3, 2, 2, 2, 1], [6, 4], [5, 4, 1]]


def entropy(p):
    return -sum(v * math.log(v) for v in p if v > 0) / math.log(len(p))


def normalized(v):
    s = sum(v)
    return [x / s for x in v]


def spread_for_entropy(gaps, target):
    """Bisect a temperature so softmax(t * gaps) has the target entropy."""
    lo, hi = 0.0, 50.0
    for _ in range(200):
        mid = (lo + hi) / 2
        p = normalized([math.exp(mid * g) for g in gaps])
        if entropy(p) > target:
            lo = mid
        else:
            hi = mid
    return normalized([math.exp(lo * g) for g in gaps])


def intrinsic_vector(rng, target, answer, rank):
    for _ in range(1000):
        gaps = sorted((rng.random() for _ in range(K)), reverse=True)
        desc = [round(v, 4) for v in spread_for_entropy(gaps, target)]
        if len(set(desc)) != K or min(desc) <= 0:
            continue
        others = [i for i in range(K) if i != answer]
        rng.shuffle(others)
        order = others[: rank - 1] + [answer] + others[rank - 1:]
        vec = [0.0] * K
        for pos, opt in enumerate(order):
            vec[opt] = desc[pos]
        return vec
    raise RuntimeError("could not draw an intrinsic vector")


def spread_counts(shape, first, rng, prefer):
    """Largest count on `first`, the next on `prefer`, the rest at random."""
    counts = [0] * K
    counts[first] = shape[0]
    rest = [i for i in range(K) if i not in (first, prefer)]
    rng.shuffle(rest)
    if prefer != first:
        rest.insert(0, prefer)
    for c, opt in zip(shape[1:], rest):
        counts[opt] += c
    return counts


def top_index(v):
    best = max(v)
    return v.index(best)


def build(rng):
    terms = list(TERMS)
    assert len(terms) == 62 and len(set(terms)) == 62
    others = terms[1:]

    answers = {"tom hanks": 1}
    for t in others:
        answers[t] = rng.randrange(K)

    ranks = {"tom hanks": 2}
    plan = list(RANK_PLAN)
    plan.remove(2)
    rng.shuffle(plan)
    for t, r in zip(others, plan):
        ranks[t] = r

    # Entropy targets: 1 - H is roughly exponential, rescaled so the corpus
    # mean (including the fixed "tom hanks" row) hits the target.
    gaps = {t: rng.expovariate(1.0) for t in others}
    fixed = entropy(normalized(TOM_HANKS))
    needed = (1 - TARGET_MEAN_ENTROPY) * len(terms) - (1 - fixed)
    scale = needed / sum(gaps.values())
    intrinsic = {"tom hanks": TOM_HANKS}
    for t in others:
        target = max(0.9, 1 - gaps[t] * scale)
        intrinsic[t] = intrinsic_vector(rng, target, answers[t], ranks[t])

    # Implicit feedback. Misses only where the default is wrong.
    wrong_default = [t for t in others if ranks[t] != 1]
    rng.shuffle(wrong_default)
    missers = set(wrong_default[: len(MISS_SHAPES)])
    hit_shapes = list(HIT_SHAPES)
    rng.shuffle(hit_shapes)
    miss_shapes = list(MISS_SHAPES)
    implicit = {"tom hanks": TOM_HANKS_FEEDBACK}
    for t in others:
        default = top_index(intrinsic[t])
        if t in missers:
            implicit[t] = spread_counts(miss_shapes.pop(), default, rng, answers[t])
        else:
            implicit[t] = spread_counts(hit_shapes.pop(), answers[t], rng, default)

    # Explicit multi-choice feedback: the relevant type is picked by most
    # workers, other types are co-selected at a per-term rate.
    explicit = {}
    for t in terms:
        rate = rng.uniform(0.0, 0.2)
        counts = [0] * K
        for _ in range(10):
            picked = False
            if rng.random() < 0.9:
                counts[answers[t]] += 1
                picked = True
            for i in range(K):
                if i != answers[t] and rng.random() < rate:
                    counts[i] += 1
                    picked = True
            if not picked:
                counts[answers[t]] += 1
        explicit[t] = counts
    return terms, answers, intrinsic, implicit, explicit


def fmt_score(v):
    return f"{v:.4f}"


def write(out, terms, answers, intrinsic, implicit, explicit):
    out.mkdir(parents=True, exist_ok=True)
    catalog = ["term_id,option_index,label"]
    scores = ["term_id,option_index,value"]
    impl = ["# provenance=implicit", "term_id,option_index,value"]
    expl = ["# provenance=explicit", "term_id,option_index,value"]
    keys = ["term_id,option_index"]
    for t in sorted(terms):
        for i, label in enumerate(LABELS):
            catalog.append(f"{t},{i + 1},{label}")
            scores.append(f"{t},{i + 1},{fmt_score(intrinsic[t][i])}")
            impl.append(f"{t},{i + 1},{implicit[t][i]}")
            expl.append(f"{t},{i + 1},{explicit[t][i]}")
        keys.append(f"{t},{answers[t] + 1}")
    for name, lines in [("catalog.csv", catalog), ("intrinsic.csv", scores),
                        ("feedback.csv", impl), ("explicit.csv", expl), ("answers.csv", keys)]:
        (out / name).write_text("\n".join(lines) + "\n", encoding="utf-8")


def summarize(terms, answers, intrinsic, implicit, explicit):
    def mean_sd(xs):
        m = sum(xs) / len(xs)
        return m, math.sqrt(sum((x - m) ** 2 for x in xs) / (len(xs) - 1))

    for name, table in [("intrinsic", intrinsic), ("explicit", explicit), ("implicit", implicit)]:
        hs = [entropy(normalized(table[t])) for t in terms]
        hits = sum(top_index(table[t]) == answers[t] for t in terms)
        m, sd = mean_sd(hs)
        print(f"{name:9s} entropy {m:.4f} +- {sd:.4f}  P@1 {hits}/{len(terms)}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    data = build(random.Random(SEED))
    write(pathlib.Path(args.out), *data)
    summarize(*data)


if __name__ == "__main__":
    main()
