"""Shared exception types. Service layers map these to machine-readable codes."""


class ClaimForgeError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class EmptyClaim(ClaimForgeError):
    """Input text produced no tokens."""


class IllegalAction(ClaimForgeError):
    """Edit action violates POS gating or positional constraints for this claim."""


class OutOfRange(ClaimForgeError):
    """Flat action index outside [0, 128)."""


class NoSynonym(ClaimForgeError):
    """Word has no synonyms in the lexicon."""


class EmptyCorpus(ClaimForgeError):
    """Index construction over zero documents."""


class EmptyQuery(ClaimForgeError):
    """Query text produced no tokens."""


class UnknownClaim(ClaimForgeError):
    """Claim has no relevance judgments in the corpus."""


class EmbeddingServiceUnavailable(ClaimForgeError):
    """External embedding endpoint unreachable or returned an error."""


class EmptyDataset(ClaimForgeError):
    """Training requested on zero trajectories / pairs."""


class ShapeMismatch(ClaimForgeError):
    """Model input batch has inconsistent shapes."""


class MissingCell(ClaimForgeError):
    """Ablation grid is missing a required (retriever, metric, mode) cell."""


class CheckpointError(ClaimForgeError):
    """Checkpoint or index snapshot file is malformed or of unknown version."""


class DatasetError(ClaimForgeError):
    """Dataset file failed validation; carries line-numbered issues."""

    def __init__(self, issues: list["DatasetIssue"]):
        self.issues = issues
        preview = "; ".join(str(i) for i in issues[:5])
        more = f" (+{len(issues) - 5} more)" if len(issues) > 5 else ""
        super().__init__(f"{len(issues)} dataset issue(s): {preview}{more}")


class DatasetIssue:
    """One line-numbered problem found while loading a dataset file."""

    __slots__ = ("kind", "path", "line", "detail")

    def __init__(self, kind: str, path: str, line: int, detail: str):
        self.kind = kind  # "parse" | "dangling_reference"
        self.path = path
        self.line = line
        self.detail = detail

    def __str__(self) -> str:
        return f"{self.path}:{self.line}: [{self.kind}] {self.detail}"

    def __repr__(self) -> str:
        return f"DatasetIssue({self.kind!r}, {self.path!r}, {self.line}, {self.detail!r})"
