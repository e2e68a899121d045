"""Language-configurable segmentation and tokenization.

Everything downstream (graphs, embeddings, evaluation) consumes the
sentence/paragraph structure produced here. Operations are pure and
deterministic: same text + profile, same output.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import EmptyDocumentError, FormatError

# Maximal runs of Unicode letters and digits; a zero-width non-joiner
# (U+200C, the Persian half-space) only joins when flanked by word chars.
DEFAULT_TOKEN_PATTERN = r"[^\W_]+(?:‌[^\W_]+)*"

DEFAULT_TERMINATORS = frozenset({".", "!", "?", "؟", "۔", "…"})


@dataclass(frozen=True)
class LanguageProfile:
    """Per-language segmentation/tokenization settings.

    ``normalization_rules`` is an ordered sequence of (source, replacement)
    string substitutions applied before tokenization. Stopwords must already
    be in normalized, lowercased form.
    """

    id: str
    sentence_terminators: frozenset[str] = DEFAULT_TERMINATORS
    stopwords: frozenset[str] = frozenset()
    token_pattern: str = DEFAULT_TOKEN_PATTERN
    normalization_rules: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.sentence_terminators:
            raise ValueError("sentence_terminators must be non-empty")
        for word in self.stopwords:
            if normalize(word, self) != word:
                raise ValueError(
                    f"stopword {word!r} is not in normalized form"
                )


@dataclass(frozen=True)
class Sentence:
    """One sentence: raw span [start, end) into the document text."""

    start: int
    end: int
    tokens: tuple[str, ...]
    content_tokens: tuple[str, ...]


@dataclass(frozen=True)
class TokenizedDocument:
    """Segmented document; spans index into ``raw_text``."""

    raw_text: str
    paragraphs: tuple[tuple[int, ...], ...]
    sentences: tuple[Sentence, ...]
    language: str

    def sentence_text(self, index: int) -> str:
        s = self.sentences[index]
        return self.raw_text[s.start:s.end]

    def paragraph_content_tokens(self, paragraph: int) -> tuple[str, ...]:
        out: list[str] = []
        for i in self.paragraphs[paragraph]:
            out.extend(self.sentences[i].content_tokens)
        return tuple(out)

    def content_tokens(self) -> tuple[str, ...]:
        out: list[str] = []
        for s in self.sentences:
            out.extend(s.content_tokens)
        return tuple(out)


@lru_cache(maxsize=32)
def _compiled(pattern: str) -> re.Pattern:
    return re.compile(pattern)


def normalize(text: str, profile: LanguageProfile) -> str:
    """Apply the profile's character-mapping rules in order, then lowercase."""
    for src, dst in profile.normalization_rules:
        text = text.replace(src, dst)
    return text.lower()


def tokenize(sentence_text: str, profile: LanguageProfile) -> tuple[str, ...]:
    """Split a piece of text into normalized word tokens."""
    return tuple(_compiled(profile.token_pattern).findall(normalize(sentence_text, profile)))


def _terminator_run(text: str, pos: int, end: int, terminators: frozenset[str]) -> int:
    """Length of the terminator run starting at ``pos`` (0 if none).

    Longest terminator string wins at each step, so multi-character
    terminators in a profile behave as units.
    """
    run = 0
    i = pos
    by_length = sorted(terminators, key=len, reverse=True)
    while i < end:
        for term in by_length:
            if text.startswith(term, i) and i + len(term) <= end:
                i += len(term)
                run = i - pos
                break
        else:
            break
    return run


def _paragraph_blocks(text: str) -> list[tuple[int, int]]:
    """Offsets of maximal runs of non-blank lines (blank line = whitespace only)."""
    blocks: list[tuple[int, int]] = []
    offset = 0
    start = None
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped and start is None:
            start = offset
        if not stripped and start is not None:
            blocks.append((start, offset))
            start = None
        offset += len(line)
    if start is not None:
        blocks.append((start, offset))
    return blocks


def segment(text: str, profile: LanguageProfile) -> TokenizedDocument:
    """Segment text into paragraphs and sentences.

    Paragraphs split on one or more blank lines. A sentence ends at a run of
    terminator characters followed by whitespace (or paragraph end); trailing
    text without a terminator still forms a sentence. Sentence spans cover
    the raw text exactly, with only whitespace in the gaps.
    """
    if not text.strip():
        raise EmptyDocumentError("document is empty or whitespace-only")

    sentences: list[Sentence] = []
    paragraphs: list[tuple[int, ...]] = []
    for pstart, pend in _paragraph_blocks(text):
        indices: list[int] = []
        i = pstart
        while i < pend:
            while i < pend and text[i].isspace():
                i += 1
            if i >= pend:
                break
            start = i
            stop = None
            j = i
            while j < pend:
                run = _terminator_run(text, j, pend, profile.sentence_terminators)
                if run:
                    after = j + run
                    if after >= pend or text[after].isspace():
                        stop = after
                        break
                    j = after
                else:
                    j += 1
            if stop is None:
                stop = pend
                while stop > start and text[stop - 1].isspace():
                    stop -= 1
            tokens = tokenize(text[start:stop], profile)
            content = tuple(t for t in tokens if t not in profile.stopwords)
            indices.append(len(sentences))
            sentences.append(Sentence(start, stop, tokens, content))
            i = stop
        if indices:
            paragraphs.append(tuple(indices))

    return TokenizedDocument(
        raw_text=text,
        paragraphs=tuple(paragraphs),
        sentences=tuple(sentences),
        language=profile.id,
    )


_UNICODE_ESCAPE = re.compile(r"\\u([0-9a-fA-F]{4})")


def _unescape(value: str) -> str:
    return _UNICODE_ESCAPE.sub(lambda m: chr(int(m.group(1), 16)), value)


def load_stopwords(path: Path) -> frozenset[str]:
    """Read a one-token-per-line UTF-8 stopword file."""
    words = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def load_profile(path: str | Path) -> LanguageProfile:
    """Load a language profile from a UTF-8 key-value file.

    Format: ``key: value`` lines, ``#`` comments. Keys: ``id`` (required),
    ``terminators`` (whitespace-separated, \\uXXXX escapes allowed),
    ``stopwords`` (file path relative to the profile file),
    ``token_pattern`` (regex for one token), and repeatable
    ``normalize: src > dst`` rules applied in file order.
    """
    path = Path(path)
    profile_id = None
    terminators: frozenset[str] | None = None
    stopwords: frozenset[str] = frozenset()
    token_pattern = DEFAULT_TOKEN_PATTERN
    rules: list[tuple[str, str]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise FormatError(f"expected 'key: value', got {line!r}", line=lineno)
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "id":
            profile_id = value
        elif key == "terminators":
            terms = frozenset(_unescape(t) for t in value.split())
            if not terms:
                raise FormatError("terminators must be non-empty", line=lineno)
            terminators = terms
        elif key == "stopwords":
            stopwords = load_stopwords(path.parent / value)
        elif key == "token_pattern":
            token_pattern = value
        elif key == "normalize":
            src, sep, dst = value.partition(">")
            if not sep:
                raise FormatError(f"normalize rule needs 'src > dst', got {value!r}", line=lineno)
            rules.append((_unescape(src.strip()), _unescape(dst.strip())))
        else:
            raise FormatError(f"unknown profile key {key!r}", line=lineno)
    if profile_id is None:
        raise FormatError("profile file missing 'id'")
    try:
        return LanguageProfile(
            id=profile_id,
            sentence_terminators=terminators or DEFAULT_TERMINATORS,
            stopwords=stopwords,
            token_pattern=token_pattern,
            normalization_rules=tuple(rules),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


@lru_cache(maxsize=8)
def builtin_profile(profile_id: str) -> LanguageProfile:
    """Profiles shipped with the package ("en", "fa")."""
    data = resources.files("semrank").joinpath("data")
    candidate = data.joinpath(f"{profile_id}.profile")
    if not candidate.is_file():
        raise KeyError(f"no builtin profile {profile_id!r}")
    with resources.as_file(candidate) as path:
        return load_profile(path)


def get_profile(id_or_path: str) -> LanguageProfile:
    """Resolve a builtin profile id or a path to a profile file."""
    try:
        return builtin_profile(id_or_path)
    except KeyError:
        if Path(id_or_path).is_file():
            return load_profile(id_or_path)
        raise
