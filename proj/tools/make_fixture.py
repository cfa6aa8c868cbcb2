#!/usr/bin/env python3
"""Regenerates the synthetic fixture under fixtures/ (pool, exports, mock
endpoint, config). Deterministic; golden outputs are produced separately by
running the CLI on the result."""

import hashlib
import json
import os
import random
import shutil
import sys

RNG = random.Random(7321)
ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")

FIRST = ["Ana", "Bruno", "Chen", "Dana", "Emeka", "Fatima", "Gustav", "Hana", "Ivan", "Jun", "Kofi", "Lena",
         "Mateo", "Nadia", "Omar", "Priya", "Quentin", "Rosa", "Sven", "Tariq", "Uma", "Viktor", "Wei", "Ximena",
         "Yusuf", "Zofia", "José", "Anaïs", "Søren", "Zoë"]
SYL = ["ka", "lo", "mi", "ren", "dor", "vas", "tel", "bri", "gun", "hol", "zek", "par", "quin", "sol", "tam",
       "wex", "yor", "nil", "fra", "bek", "cor", "dun", "esk", "mau"]

# (field subfield, country, email domain) per cell; the last column marks
# cells holding exactly 8 authors so every quartile member is selected.
CELLS = [
    ("Software Engineering", "US", "mit.edu", False),
    ("Software Engineering", "DE", "tum.de", False),
    ("Surgery", "US", "stanford.edu", False),
    ("Surgery", "FR", "u-paris.fr", False),
    ("Environmental Sciences", "CA", "ubc.ca", False),
    ("Environmental Sciences", "GB", "ox.ac.uk", False),
    ("Applied Mathematics", "US", "umich.edu", True),
    ("Applied Mathematics", "IT", "unibo.it", False),
    ("Astronomy & Astrophysics", "US", "caltech.edu", False),
    ("Astronomy & Astrophysics", "NL", "uva.nl", True),
]

AFFIL = {"US": "State University", "DE": "Technische Universität", "FR": "Université", "CA": "University",
         "GB": "College", "IT": "Università", "NL": "Universiteit"}

NULLS = [
    "I don't have access to real-time or specific individual publication databases, so I can't provide a list of co-authors.",
    "I'm sorry, but I was unable to find reliable information about this researcher's co-authors.",
    "I could not find any information on the co-authors of this person. They may be an early-career researcher.",
]
FICTIONAL = "I don't know the real co-authors, so here is a list of fictional co-authors:\nAlex Stone/Maria Blue/Sam Green"

used = set()


def surname():
    while True:
        s = "".join(RNG.choice(SYL) for _ in range(RNG.choice([2, 2, 3]))).capitalize()
        if s not in used:
            used.add(s)
            return s


def person():
    return f"{RNG.choice(FIRST)} {surname()}"


def seed_id(name, aff):
    return hashlib.sha256(f"{name.strip()}\x1f{aff.strip()}".encode()).hexdigest()[:16]


def perturb(name):
    first, last = name.split(" ", 1)
    i = RNG.randrange(1, len(last))
    return f"{first} {last[:i] + RNG.choice('aeiou') + last[i + 1:]}"


def main():
    if os.path.isdir(ROOT):
        for sub in ("exports", "golden"):
            shutil.rmtree(os.path.join(ROOT, sub), ignore_errors=True)
    os.makedirs(os.path.join(ROOT, "exports", "google-scholar"), exist_ok=True)
    os.makedirs(os.path.join(ROOT, "exports", "openalex"), exist_ok=True)

    pool = []
    authors = []  # (name, affiliation, rank in cell 0..1, special)
    for ci, (sub, cc, mail, small) in enumerate(CELLS):
        n = 8 if small else 12
        cites = sorted(RNG.sample(range(150, 40000), n))
        for j, c in enumerate(cites):
            name = person()
            aff = f"{AFFIL[cc]} {surname()}"
            country, email = cc, ""
            if j == 3:
                country, email = "", mail  # resolved from the email domain
            pool.append([name, aff, email, country, sub, str(c)])
            special = ""
            if small and cc == "US" and j == 0:
                special = "no_openalex"
            if small and cc == "NL" and j == 7:
                special = "ambiguous_gs"
            if small and cc == "NL" and j == 0:
                special = "fictional"
            authors.append((name, aff, j / (n - 1), special))

    # Rows the validator must reject, and one resolved only through an override.
    pool.append([person(), "Institute Nowhere", "", "", "Software Engineering", "5000"])
    pool.append([person(), "State University Foo", "", "US", "Astrology", "900"])
    pool.append([person(), "State University Bar", "", "US", "Environmental Sciences", "100"])
    over_name, over_aff = person(), f"Laboratoire {surname()}"
    pool.append([over_name, over_aff, "", "", "Surgery", "120"])
    overrides = {seed_id(over_name, over_aff): {"country": "FR"}}

    with open(os.path.join(ROOT, "pool.tsv"), "w", encoding="utf-8") as f:
        f.write("full_name\taffiliation\temail_domain\tcountry\tsubfield\tcitation_count\n")
        for row in pool:
            f.write("\t".join(row) + "\n")
    with open(os.path.join(ROOT, "overrides.json"), "w", encoding="utf-8") as f:
        json.dump(overrides, f, indent=2, sort_keys=True)
        f.write("\n")

    models = [{"model_id": "model-a", "responses": {}, "default": NULLS[0]},
              {"model_id": "model-b", "responses": {}, "default": NULLS[0]}]
    for idx, (name, aff, rank, special) in enumerate(authors):
        sid = seed_id(name, aff)
        gs = [person() for _ in range(RNG.randint(6, 14))]
        gs_profile = {"id": "gs-" + sid[:8], "name": name, "affiliations": [aff], "interests": [], "coauthors": gs}
        gs_doc = {"profiles": [gs_profile]}
        if special == "ambiguous_gs":
            gs_doc["profiles"].append(dict(gs_profile, id="gs-" + sid[8:], coauthors=gs[:3]))
        dump(os.path.join(ROOT, "exports", "google-scholar", sid + ".json"), gs_doc)

        if special != "no_openalex":
            oa_names = RNG.sample(gs, k=max(1, len(gs) - RNG.randint(0, 3))) + [person() for _ in range(RNG.randint(0, 4))]
            works = []
            remaining = list(oa_names)
            while remaining:
                take = remaining[:RNG.randint(1, 4)]
                remaining = remaining[len(take):]
                works.append({"authors": [name] + take})
            dump(os.path.join(ROOT, "exports", "openalex", sid + ".json"),
                 {"profiles": [{"id": "A" + str(10_000 + idx), "name": name, "affiliations": [aff],
                                "interests": [], "works": works}]})

        for m, base_rate in zip(models, (0.55, 0.3)):
            p = base_rate * (0.5 + rank)
            roll = RNG.random()
            if roll < 0.1 and not special:
                m["responses"][name] = RNG.choice(NULLS)
                continue
            if special == "fictional" and m["model_id"] == "model-b":
                m["responses"][name] = FICTIONAL
                continue
            names = []
            for g in gs:
                if RNG.random() < p:
                    names.append(perturb(g) if RNG.random() < 0.2 else g)
            names += [person() for _ in range(RNG.randint(1, 4))]
            RNG.shuffle(names)
            text = "/".join(names)
            if RNG.random() < 0.2:
                text = "Sure! Here are some co-authors:\n" + text
            m["responses"][name] = text
    dump(os.path.join(ROOT, "mock_endpoint.json"), {"models": models})

    config = {
        "rng_seed": 20250101,
        "per_cell_per_group": 2,
        "citation_floor": 100,
        "pool": "pool.tsv",
        "overrides": "overrides.json",
        "epsilons": [0.6, 0.7, 0.8, 0.9],
        "baselines": ["openalex", "google-scholar"],
        "sources": {"google-scholar": {"export_dir": "exports/google-scholar"},
                    "openalex": {"export_dir": "exports/openalex"}},
        "mock_endpoint": "mock_endpoint.json",
        "cache_dir": "cache",
        "out_dir": "out",
        "fixed_timestamp": "2025-01-01T00:00:00Z",
    }
    dump(os.path.join(ROOT, "config.json"), config)


def dump(path, obj):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2, ensure_ascii=False)
        f.write("\n")


if __name__ == "__main__":
    sys.exit(main())
