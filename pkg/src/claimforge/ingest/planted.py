"""Synthetic benchmark where claims are corrupted copies of their relevant docs.

Topic structure. Each claim has a five-noun core (subject, object, place, two
fillers); both relevant documents contain exactly that core plus two padding
words, one in a shuffled order. The claim interleaves the core with three
kinds of corrupt tokens:

  * an inflected verb at position 1,
  * an off-vocabulary adjective at position 2 (the synonym partner of a word
    that pulls traps, see below),
  * 1-2 junk tokens appended at the end.

Every corrupt token pulls its own small band of trap documents that consist
of that token repeated (high idf, high tf): while the token remains in the
query those traps outrank both relevant documents. Because traps share no
vocabulary with anything else, the only way to dismiss a band is to edit its
token: change the verb to present simple (or remove it), swap the adjective
for its synonym (or remove it), remove the junk. Each edit therefore yields a
strict, bounded rank improvement, and the exhaustive improvement-only search
certifies the per-claim best into an answer key.

The harm channel is separate: for every core noun there is a wall document
containing the other four nouns, sitting just below the relevant documents.
Removing a noun, or swapping it for its decoy synonym (decoys appear in no
document and are irreversible), drops the relevant documents under that wall.
Most of the edit space is therefore strictly harmful and random edit
sequences drift below the original claim.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from claimforge.lexedit import Lexicon, tokenize
from claimforge.searchenv import Corpus, RewardSpec, build_index
from claimforge.trajgen import GenConfig, generate_trajectories
from claimforge.trajgen.generate import PERFECT
from claimforge.ingest.datasets import ClaimRecord

SUBJECTS = [
    "scientist", "farmer", "senator", "painter", "pilot",
    "nurse", "engineer", "teacher", "miner", "sailor",
]

# base form first, then the inflections a claim may carry
VERBS = [
    ("discover", ["discovered", "discovers", "discovering"]),
    ("report", ["reported", "reports", "reporting"]),
    ("reveal", ["revealed", "reveals", "revealing"]),
    ("confirm", ["confirmed", "confirms", "confirming"]),
    ("deny", ["denied", "denies", "denying"]),
    ("announce", ["announced", "announces", "announcing"]),
    ("examine", ["examined", "examines", "examining"]),
    ("protect", ["protected", "protects", "protecting"]),
    ("restore", ["restored", "restores", "restoring"]),
    ("collect", ["collected", "collects", "collecting"]),
    ("observe", ["observed", "observes", "observing"]),
    ("design", ["designed", "designs", "designing"]),
    ("repair", ["repaired", "repairs", "repairing"]),
    ("measure", ["measured", "measures", "measuring"]),
    ("record", ["recorded", "records", "recording"]),
    ("inspect", ["inspected", "inspects", "inspecting"]),
    ("acquire", ["acquired", "acquires", "acquiring"]),
    ("display", ["displayed", "displays", "displaying"]),
]

# (word used in documents, partner used in corrupted claims)
ADJ_PAIRS = [
    ("ancient", "antique"), ("huge", "gigantic"), ("rare", "scarce"),
    ("fragile", "brittle"), ("valuable", "precious"), ("strange", "odd"),
    ("bright", "luminous"), ("silent", "quiet"), ("rapid", "swift"),
    ("sturdy", "robust"), ("smooth", "sleek"), ("hollow", "empty"),
    ("frozen", "icy"), ("golden", "gilded"), ("massive", "immense"),
    ("narrow", "slim"), ("crooked", "bent"), ("vivid", "vibrant"),
]

OBJECTS = [
    "fossil", "statue", "bridge", "manuscript", "telescope",
    "engine", "painting", "tunnel", "satellite", "reactor",
]

CONTEXTS = [
    "desert", "harbor", "valley", "museum",
    "island", "plateau", "village", "canyon",
]

# uncorrupted topic words fleshing out claims and documents
FILLERS = [
    "archive", "basalt", "cargo", "dossier", "emblem",
    "fresco", "granite", "harvest", "inscription", "jetty",
]

# padding vocabulary: appears only inside documents, never in claims, so it
# adds document length without matching any query
PADS = [
    "annex", "atrium", "awning", "buttress", "cornice", "facade",
    "gable", "gallery", "hallway", "lintel", "parapet", "pavilion",
    "plinth", "portico", "rotunda", "terrace", "veranda", "vestibule",
]

TRAPS_PER_TOKEN = 2
TRAP_REPEATS = 8


@dataclass
class PlantedBenchmark:
    claims: list[ClaimRecord]
    corpus: Corpus
    lexicon: Lexicon
    # claim_id -> {"original": r0, "best": best reward at depth <= max_depth}
    answer_key: dict[str, dict[str, float]]
    spec: RewardSpec
    backend: str
    max_depth: int

    def split(self, n_train: int) -> tuple[list[ClaimRecord], list[ClaimRecord]]:
        return self.claims[:n_train], self.claims[n_train:]

    def headroom(self, claim_ids: list[str] | None = None) -> float:
        """Mean answer-key gain (best minus original) over the given claims."""
        ids = claim_ids if claim_ids is not None else [c.claim_id for c in self.claims]
        return sum(
            self.answer_key[cid]["best"] - self.answer_key[cid]["original"] for cid in ids
        ) / len(ids)


def decoy_for(word: str) -> str:
    return word + "oid"


def planted_lexicon() -> Lexicon:
    lex = Lexicon()
    for word in SUBJECTS + OBJECTS + CONTEXTS + FILLERS:
        lex.add_pos(word, "NOUN")
        lex.add_pos(decoy_for(word), "NOUN")
        # decoys match no document and have no synonyms of their own, so
        # swapping a content noun is a strict loss that cannot be undone
        lex.add_synonyms(word, [decoy_for(word)])
    for base, inflections in VERBS:
        lex.add_pos(base, "VERB")
        for infl in inflections:
            lex.add_pos(infl, "VERB")
            lex.add_verb_form(infl, base)
    for doc_adj, claim_adj in ADJ_PAIRS:
        lex.add_pos(doc_adj, "ADJ")
        lex.add_pos(claim_adj, "ADJ")
        lex.add_synonyms(doc_adj, [claim_adj])
        lex.add_synonyms(claim_adj, [doc_adj])
    return lex


def make_planted_benchmark(
    n_claims: int,
    seed: int,
    backend: str = "bm25",
    spec: RewardSpec = RewardSpec("ap", 50),
    max_depth: int = 4,
    max_junk: int = 1,
    traps_per_junk: int = TRAPS_PER_TOKEN,
    compute_answer_key: bool = True,
) -> PlantedBenchmark:
    """Generate claims, corpus, lexicon and the exhaustive-search answer key."""
    if n_claims < 1:
        raise ValueError("n_claims must be >= 1")
    rng = random.Random(seed)
    space = len(SUBJECTS) * len(VERBS) * len(ADJ_PAIRS) * len(OBJECTS)
    if n_claims > space:
        raise ValueError(f"at most {space} distinct topics available")
    topic_ids = rng.sample(range(space), n_claims)

    lexicon = planted_lexicon()
    docs: dict[str, str] = {}
    relevance: dict[str, set[str]] = {}
    claims: list[ClaimRecord] = []

    def trap_band(token: str, prefix: str) -> None:
        for t in range(traps_per_junk):
            docs[f"{prefix}{t}"] = " ".join([token] * TRAP_REPEATS)

    for i, topic in enumerate(topic_ids):
        subj, verb_idx, pair_idx, obj = _unrank(topic)
        base, inflections = VERBS[verb_idx]
        safe_adj, trap_adj = ADJ_PAIRS[pair_idx]
        place = rng.choice(CONTEXTS)
        filler = rng.choice(FILLERS)
        core = [subj, obj, place, filler]

        doc_a = f"d{i:04d}a"
        doc_b = f"d{i:04d}b"
        # padding keeps the relevant docs safely below every active trap band
        body = core + rng.sample(PADS, 5)
        docs[doc_a] = " ".join(body)
        shuffled = list(body)
        while shuffled == body:
            rng.shuffle(shuffled)
        docs[doc_b] = " ".join(shuffled)

        # per-noun wall docs just below the relevant pair: losing that noun
        # (removal or decoy swap) drops the relevant docs under the wall
        for k, missing in enumerate(core):
            wall = [w for w in core if w != missing] + rng.sample(PADS, 4)
            docs[f"d{i:04d}w{k}"] = " ".join(wall)

        # corruption presence varies per claim so every state the policies can
        # reach mid-episode also occurs as some claim's initial state; the
        # average claim carries under two corruptions
        corrupt_verb = rng.random() < 0.55
        corrupt_adj = rng.random() < 0.55
        n_junk = rng.randint(0, max_junk)
        if not (corrupt_verb or corrupt_adj or n_junk):
            n_junk = 1

        corrupt_tokens = []
        corrupted = [subj]
        if corrupt_verb:
            inflected = rng.choice(inflections)
            trap_band(inflected, f"v-{inflected}-")
            corrupted.append(inflected)
            corrupt_tokens.append(inflected)
        else:
            corrupted.append(base)
        if corrupt_adj:
            trap_band(trap_adj, f"a-{trap_adj}-")
            corrupted.append(trap_adj)
            corrupt_tokens.append(trap_adj)
        else:
            corrupted.append(safe_adj)
        corrupted += [obj, place, filler]
        for j in range(n_junk):
            junk = f"qx{i:04d}{chr(ord('a') + j)}"
            corrupted.append(junk)
            corrupt_tokens.append(junk)
            trap_band(junk, f"d{i:04d}t{j}-")
        # one short doc holding every corrupt token: the nearest neighbour of
        # the corrupted claim under cosine, dismissed token by token
        docs[f"d{i:04d}x"] = " ".join(corrupt_tokens)

        claim_id = f"c{i:04d}"
        relevance[claim_id] = {doc_a, doc_b}
        claims.append(
            ClaimRecord(
                claim_id=claim_id,
                text=" ".join(corrupted),
                relevant_doc_ids=(doc_a, doc_b),
                label="supports" if i % 2 == 0 else "refutes",
            )
        )

    corpus = Corpus(docs=docs, relevance=relevance)
    answer_key: dict[str, dict[str, float]] = {}
    if compute_answer_key:
        answer_key = exhaustive_answer_key(
            claims, corpus, lexicon, backend=backend, spec=spec, max_depth=max_depth
        )
    return PlantedBenchmark(
        claims=claims,
        corpus=corpus,
        lexicon=lexicon,
        answer_key=answer_key,
        spec=spec,
        backend=backend,
        max_depth=max_depth,
    )


def exhaustive_answer_key(
    claims: list[ClaimRecord],
    corpus: Corpus,
    lexicon: Lexicon,
    backend: str,
    spec: RewardSpec,
    max_depth: int,
) -> dict[str, dict[str, float]]:
    """Best reachable reward per claim via improvement-only search, unpruned."""
    endpoint = build_index(corpus, backend)
    cfg = GenConfig(
        max_depth=max_depth,
        min_improvement=0.0,
        random_prune_prob=0.0,
        top_n_sequences=1_000_000,
    )
    key: dict[str, dict[str, float]] = {}
    for record in claims:
        claim = tokenize(record.text, lexicon, claim_id=record.claim_id)
        from claimforge.searchenv.endpoints import reward as reward_fn

        r0 = reward_fn(endpoint, claim, spec, corpus)
        if r0 >= PERFECT:
            key[record.claim_id] = {"original": r0, "best": r0}
            continue
        trajs = generate_trajectories(claim, endpoint, spec, cfg, corpus, lexicon)
        best = max((t.final_reward for t in trajs), default=r0)
        key[record.claim_id] = {"original": r0, "best": best}
    return key


def _unrank(topic: int) -> tuple[str, int, int, str]:
    n_v, n_p, n_o = len(VERBS), len(ADJ_PAIRS), len(OBJECTS)
    obj = OBJECTS[topic % n_o]
    topic //= n_o
    pair_idx = topic % n_p
    topic //= n_p
    verb_idx = topic % n_v
    topic //= n_v
    subj = SUBJECTS[topic]
    return subj, verb_idx, pair_idx, obj


# Stable topic space; changing vocab sizes would break seeded reproducibility.
assert len(SUBJECTS) == 10 and len(OBJECTS) == 10
assert len(VERBS) == 18 and len(ADJ_PAIRS) == 18
assert len(list(itertools.chain(SUBJECTS, OBJECTS, CONTEXTS))) == len(
    set(itertools.chain(SUBJECTS, OBJECTS, CONTEXTS))
)
