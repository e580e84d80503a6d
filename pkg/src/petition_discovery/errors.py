"""Exception hierarchy shared across the discovery pipeline."""


class DiscoveryError(Exception):
    """Base class for all errors raised by this package."""


class EmptyQuery(DiscoveryError):
    """Query term is blank after trimming."""


class SourceUnavailable(DiscoveryError):
    """Corpus source (network endpoint or file) could not be reached."""


class SchemaMismatch(DiscoveryError):
    """A remote response lacks required petition fields."""


class ParseError(DiscoveryError):
    """A corpus file record is malformed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateId(ParseError):
    """A corpus file repeats a petition id."""

    def __init__(self, line_number: int, petition_id: str):
        super().__init__(line_number, f"duplicate petition id {petition_id!r}")
        self.petition_id = petition_id


class UnsupportedLanguage(DiscoveryError):
    """Requested language has no tokenizer/stemmer support."""


class EmptyCorpus(DiscoveryError):
    """Suffix tree construction needs at least one non-empty sentence."""


class EmptyPhrase(DiscoveryError):
    """Phrase lookups require at least one token."""


class InvalidThreshold(DiscoveryError):
    """Merge threshold must lie in (0, 1]."""


class TimestampBeforeEpoch(DiscoveryError):
    """Hot-score input predates the configured score origin."""


class EmptyInput(DiscoveryError):
    """Layout called with no items."""


class NonpositiveCanvas(DiscoveryError):
    """Canvas dimensions must be strictly positive."""


class CannotFit(DiscoveryError):
    """Circles cannot be packed even after canvas auto-scaling."""
