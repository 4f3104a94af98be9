"""Hand-built corpora shared by the baseline, CLI and acceptance tests."""
from folksonomy.corpus import RawRecord


def china_country_records():
    """freq(china)=596, freq(countri)=256, co-occurrence 6; 5 users assert countri->china.

    One of the five users files China under both "Countries" and "Country",
    which gives two documents but a single user vote.
    """
    recs = [RawRecord(f"cc{i}", "Countries", "China") for i in range(5)]
    recs.append(RawRecord("cc0", "Country", "China"))
    recs += [RawRecord(f"tr{i}", "Travel", "China") for i in range(590)]
    recs += [RawRecord(f"ct{i}", "Countries", "Misc") for i in range(250)]
    return recs


def nested_records(users_per_edge=4):
    """Zero-noise nested fixture: every narrow document also carries its broader term."""
    edges = [("Animals", "Birds"), ("Animals", "Insects"), ("Vehicles", "Cars"),
             ("Vehicles", "Trucks"), ("Vehicles", "Bicycles")]
    return [RawRecord(f"{c}-{s}-{u}", c, s) for c, s in edges for u in range(users_per_edge)]
