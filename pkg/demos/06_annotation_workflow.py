"""
Collecting gold alignments with the annotation backend
======================================================

"""

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from bitalign import Corpus, SentencePair, parse_pharaoh, tokenize
from bitalign.annotation import AnnotationStore, validate_guidelines
from bitalign.service import create_app


def make_pair(pair_id, de, rm):
    return SentencePair(pair_id, tuple(tokenize(de)), tuple(tokenize(rm)))


corpus = Corpus((
    make_pair(0, "Der Wald schützt das Dorf .", "Il guaud protegia il vitg ."),
    make_pair(1, "Die Strasse bleibt gesperrt .", "La via resta serrada ."),
    make_pair(2, "Der Winter war lang .", "L'enviern è stà lung ."),
))

with tempfile.TemporaryDirectory() as tmp:
    # The store keeps per-pair status plus the growing gold file, written
    # atomically so a crash never leaves half a file behind.
    store = AnnotationStore(corpus, Path(tmp) / "state")
    print("fresh store:", store.progress())

    # Annotators work through the queue in pair-id order.
    task = store.next_pending()
    links = parse_pharaoh("0-0 1-1 2-2 3-3 4-4 5-5")
    snapshot, previous = store.set_links(task.id, links)
    print(f"saved pair {snapshot.id}: status {snapshot.status},"
          f" version {previous} -> {snapshot.version}")

    # The guideline checks flag suspicious patterns before they reach gold.
    odd = parse_pharaoh("0-0 0-1 0-2 0-3")
    for warning in validate_guidelines(corpus[1], odd):
        print("  warning:", warning)

    # Pairs that should not enter the gold standard get discarded instead,
    # with a reason that survives in the status file.
    store.discard(2, "source sentence is truncated")
    print("after one save and one discard:", store.progress())

    # The HTTP layer exposes the same store; the UI talks to these routes.
    client = TestClient(create_app(store))
    nxt = client.get("/v1/pairs/next").json()
    print("\nnext pair over HTTP:", nxt["id"], nxt["src_tokens"])

    response = client.put(
        f"/v1/pairs/{nxt['id']}/links",
        json={"links": "0-0 1-1 2-2 3-3 4-4", "base_version": nxt["version"]},
    ).json()
    print("saved over HTTP:", response)

    # Optimistic concurrency: a second writer with a stale version still
    # lands (last write wins) but is told about the conflict.
    stale = client.put(
        f"/v1/pairs/{nxt['id']}/links",
        json={"links": "0-0 1-1", "base_version": nxt["version"]},
    ).json()
    print("stale save reports conflict:", stale["conflict"])

    print("\nexported gold standard:")
    print(client.get("/v1/export").text, end="")
