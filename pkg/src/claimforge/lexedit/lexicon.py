"""Lexicon tables backing tokenization, POS assignment and the edit actions.

Three tab-separated files make up a lexicon directory:

    synonyms.tsv   word<TAB>syn1,syn2,...
    pos.tsv        word<TAB>VERB|NOUN|ADJ|ADV|STOP
    verbs.tsv      inflected<TAB>base

Lines starting with '#' are comments. Lookups are case-insensitive; stored
forms are lowercase.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path


class POSCategory(enum.Enum):
    VERB = "Verb"
    NOUN = "Noun"
    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    STOPWORD = "StopWord"
    OTHER = "Other"


_POS_TAGS = {
    "VERB": POSCategory.VERB,
    "NOUN": POSCategory.NOUN,
    "ADJ": POSCategory.ADJECTIVE,
    "ADV": POSCategory.ADVERB,
    "STOP": POSCategory.STOPWORD,
}

# Tie order when a word appears in several tables: Verb > Noun > Adjective >
# Adverb > StopWord; unknown words fall through to Other.
_PRIORITY = (
    POSCategory.VERB,
    POSCategory.NOUN,
    POSCategory.ADJECTIVE,
    POSCategory.ADVERB,
)


@dataclass
class Lexicon:
    """Immutable-by-convention word tables; share freely across workers."""

    synonyms: dict[str, list[str]] = field(default_factory=dict)
    pos_table: dict[str, set[POSCategory]] = field(default_factory=dict)
    verb_forms: dict[str, str] = field(default_factory=dict)
    stopwords: set[str] = field(default_factory=set)

    def pos_of(self, token: str) -> POSCategory:
        word = token.lower()
        cats = self.pos_table.get(word, ())
        for cat in _PRIORITY:
            if cat in cats:
                return cat
        if word in self.stopwords:
            return POSCategory.STOPWORD
        return POSCategory.OTHER

    def synonyms_of(self, token: str) -> list[str]:
        return self.synonyms.get(token.lower(), [])

    def present_form(self, token: str) -> str | None:
        """Present-simple base for an inflected verb, or None if unlisted."""
        return self.verb_forms.get(token.lower())

    def add_synonyms(self, word: str, syns: list[str]) -> None:
        word = word.lower()
        cleaned = [s.lower() for s in syns if s and s.lower() != word]
        if cleaned:
            self.synonyms.setdefault(word, []).extend(
                s for s in cleaned if s not in self.synonyms.get(word, [])
            )

    def add_pos(self, word: str, tag: str) -> None:
        tag = tag.upper()
        word = word.lower()
        if tag == "STOP":
            self.stopwords.add(word)
            return
        if tag not in _POS_TAGS:
            raise ValueError(f"unknown POS tag {tag!r} for {word!r}")
        self.pos_table.setdefault(word, set()).add(_POS_TAGS[tag])

    def add_verb_form(self, inflected: str, base: str) -> None:
        base = base.lower()
        if not base:
            raise ValueError(f"empty base form for {inflected!r}")
        self.verb_forms[inflected.lower()] = base

    # --- persistence ---

    @classmethod
    def from_dir(cls, path: str | Path) -> "Lexicon":
        path = Path(path)
        lex = cls()
        lex._read_synonyms(_read_tsv(path / "synonyms.tsv"))
        lex._read_pos(_read_tsv(path / "pos.tsv"))
        lex._read_verbs(_read_tsv(path / "verbs.tsv"))
        return lex

    @classmethod
    def builtin(cls) -> "Lexicon":
        """Lexicon bundled with the package (small general-English tables)."""
        lex = cls()
        pkg = resources.files("claimforge.lexedit") / "data"
        lex._read_synonyms(_parse_tsv((pkg / "synonyms.tsv").read_text("utf-8")))
        lex._read_pos(_parse_tsv((pkg / "pos.tsv").read_text("utf-8")))
        lex._read_verbs(_parse_tsv((pkg / "verbs.tsv").read_text("utf-8")))
        return lex

    def save_dir(self, path: str | Path) -> None:
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        syn_lines = [f"{w}\t{','.join(s)}" for w, s in sorted(self.synonyms.items())]
        (path / "synonyms.tsv").write_text("\n".join(syn_lines) + "\n", "utf-8")
        pos_lines = []
        rev = {v: k for k, v in _POS_TAGS.items()}
        for w, cats in sorted(self.pos_table.items()):
            for cat in sorted(cats, key=lambda c: c.value):
                pos_lines.append(f"{w}\t{rev[cat]}")
        for w in sorted(self.stopwords):
            pos_lines.append(f"{w}\tSTOP")
        (path / "pos.tsv").write_text("\n".join(pos_lines) + "\n", "utf-8")
        verb_lines = [f"{i}\t{b}" for i, b in sorted(self.verb_forms.items())]
        (path / "verbs.tsv").write_text("\n".join(verb_lines) + "\n", "utf-8")

    def _read_synonyms(self, rows: list[tuple[str, str]]) -> None:
        for word, rest in rows:
            self.add_synonyms(word, rest.split(","))

    def _read_pos(self, rows: list[tuple[str, str]]) -> None:
        for word, tag in rows:
            self.add_pos(word, tag)

    def _read_verbs(self, rows: list[tuple[str, str]]) -> None:
        for inflected, base in rows:
            self.add_verb_form(inflected, base)


def _read_tsv(path: Path) -> list[tuple[str, str]]:
    if not path.exists():
        return []
    return _parse_tsv(path.read_text("utf-8"))


def _parse_tsv(text: str) -> list[tuple[str, str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition("\t")
        rows.append((head.strip(), rest.strip()))
    return rows
