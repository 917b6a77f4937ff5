"""Phrase lexicons and the multi-pattern matcher compiled from them.

A lexicon is a flat list of phrases (one per line in a UTF-8 text file)
tagged with what it represents: general profanity, keywords for one
identity attribute, or a software/hardware gazetteer. Several lexicons
compile together into one immutable :class:`PhraseMatcher` that scans a
text once and reports every occurrence of every phrase.

Matching semantics
------------------
* Case-insensitive via a per-scalar fold, so match offsets always index
  the original text (folds that would change string length, such as the
  sharp s, are handled without shifting positions).
* Multi-word phrases match across any single run of whitespace: the
  phrase "gay ass" matches "gay   ass" and "gay\\nass".
* Both edges of a match must fall on word boundaries. A position is a
  boundary unless the scalars on both sides are word characters (Unicode
  letters or numbers). This stops "class" from matching inside
  "classic" while still letting phrases with non-letter edges (e.g.
  "c++") terminate cleanly next to punctuation.
* Overlapping matches are all reported; a phrase present in two lexicons
  yields one span per lexicon at the same location.

The scan itself is a character-level Aho-Corasick automaton run over a
whitespace-collapsed, case-folded view of the text, with every reported
span mapped back to original offsets and boundary-checked there. For
the lexicon sizes involved this is effectively linear in the text.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateLexiconIdError, EmptyLexiconError, InvalidEncodingError
from .taxonomy import AttributeId, Branch


class LexiconKind(enum.Enum):
    PROFANITY = "profanity"
    ATTRIBUTE_KEYWORDS = "attribute_keywords"
    GAZETTEER = "gazetteer"


def fold_char(c: str) -> str:
    """Length-preserving case fold of a single scalar.

    Falls back to the original scalar (or the first scalar of the full
    fold) when the standard fold would expand, so that folded text always
    aligns index-for-index with the input.
    """
    f = c.casefold()
    if len(f) == 1:
        return f
    l = c.lower()
    if len(l) == 1:
        return l
    return f[0]


def normalize_phrase(raw: str) -> str:
    """Canonical phrase form: folded, single-space separated, stripped."""
    return "".join(fold_char(c) for c in " ".join(raw.split()))


def is_word_char(c: str) -> bool:
    """Word scalars are Unicode letters and numbers."""
    return c.isalnum()


def is_boundary(text: str, pos: int) -> bool:
    """True when ``pos`` is a valid match edge in ``text``.

    Text edges are boundaries; interior positions are boundaries unless
    flanked by word scalars on both sides.
    """
    if pos <= 0 or pos >= len(text):
        return True
    return not (is_word_char(text[pos - 1]) and is_word_char(text[pos]))


@dataclass(frozen=True)
class PhraseLexicon:
    """A validated, normalized phrase list with its source recorded.

    ``attribute`` is required for attribute-keyword and gazetteer lexicons
    (gazetteers must name a computing attribute) and forbidden for
    profanity lists.
    """

    lexicon_id: str
    kind: LexiconKind
    phrases: frozenset[str]
    attribute: AttributeId | None = None
    source: str = ""
    dropped_duplicates: int = 0

    def __post_init__(self) -> None:
        if not self.lexicon_id:
            raise ValueError("lexicon_id must be non-empty")
        if self.kind is LexiconKind.PROFANITY:
            if self.attribute is not None:
                raise ValueError("profanity lexicons carry no attribute")
        elif self.attribute is None:
            raise ValueError(f"{self.kind.value} lexicon requires an attribute")
        elif self.kind is LexiconKind.GAZETTEER:
            if self.attribute.branch is not Branch.COMPUTING_SPECIFIC:
                raise ValueError("gazetteer attribute must be software or hardware")
        elif self.attribute.branch is not Branch.IDENTITY_BASED:
            raise ValueError("attribute-keyword lexicon needs an identity attribute")
        for phrase in self.phrases:
            if phrase != normalize_phrase(phrase) or not phrase:
                raise ValueError(f"phrase not in normalized form: {phrase!r}")


@dataclass(frozen=True, order=True)
class MatchSpan:
    """One phrase occurrence: offsets are Unicode scalar indices.

    The slice ``text[start:end]``, case-folded and whitespace-normalized,
    equals ``phrase``; both edges fall on word boundaries. Ordering is
    (start, end, lexicon_id, ...), the report order of ``find_matches``.
    """

    start: int
    end: int
    lexicon_id: str
    phrase: str
    attribute: AttributeId | None = None

    def sort_key(self) -> tuple[int, int, str]:
        return (self.start, self.end, self.lexicon_id)

    def to_dict(self, *, with_attribute: bool = False) -> dict:
        d = {
            "start": self.start,
            "end": self.end,
            "phrase": self.phrase,
            "lexicon_id": self.lexicon_id,
        }
        if with_attribute:
            d["attribute"] = self.attribute.value if self.attribute else None
        return d

    @classmethod
    def from_dict(cls, d: dict, attribute: AttributeId | None = None) -> "MatchSpan":
        attr = d.get("attribute")
        if isinstance(attr, str):
            attribute = AttributeId.from_wire(attr)
        return cls(
            start=int(d["start"]),
            end=int(d["end"]),
            lexicon_id=str(d["lexicon_id"]),
            phrase=str(d["phrase"]),
            attribute=attribute,
        )


def load_lexicon(
    path: str | Path,
    kind: LexiconKind,
    attribute: AttributeId | None = None,
    lexicon_id: str | None = None,
    source: str = "",
) -> PhraseLexicon:
    """Read a phrase-per-line UTF-8 file into a :class:`PhraseLexicon`.

    Lines starting with '#' are comments, blank lines are skipped, and
    every surviving line is normalized (folded, whitespace-collapsed).
    Lines that become duplicates after normalization are dropped and
    counted in ``dropped_duplicates``.

    Raises ``FileNotFoundError``, :class:`InvalidEncodingError` (with the
    offending line number), or :class:`EmptyLexiconError`.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"lexicon file not found: {path}")
    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise InvalidEncodingError(str(path), line) from exc

    phrases: set[str] = set()
    dropped = 0
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        phrase = normalize_phrase(stripped)
        if phrase in phrases:
            dropped += 1
        else:
            phrases.add(phrase)
    if not phrases:
        raise EmptyLexiconError(f"no phrases in lexicon file: {path}")
    return PhraseLexicon(
        lexicon_id=lexicon_id or path.stem,
        kind=kind,
        phrases=frozenset(phrases),
        attribute=attribute,
        source=source,
        dropped_duplicates=dropped,
    )


def load_manifest(path: str | Path) -> list[PhraseLexicon]:
    """Load every lexicon named by a JSON manifest.

    The manifest maps lexicon_id -> {path, kind, attribute?, source?};
    file paths are resolved relative to the manifest's directory.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"lexicon manifest not found: {path}")
    entries = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(entries, dict):
        raise ValueError("manifest must be a JSON object mapping id -> entry")
    lexicons = []
    for lexicon_id, entry in entries.items():
        kind = LexiconKind(entry["kind"])
        attribute = None
        if "attribute" in entry and entry["attribute"] is not None:
            attribute = AttributeId.from_wire(entry["attribute"])
        lexicons.append(
            load_lexicon(
                path.parent / entry["path"],
                kind,
                attribute=attribute,
                lexicon_id=lexicon_id,
                source=entry.get("source", ""),
            )
        )
    return lexicons


class _Node:
    """Trie node of the phrase automaton."""

    __slots__ = ("goto", "fail", "out")

    def __init__(self) -> None:
        self.goto: dict[str, _Node] = {}
        self.fail: _Node | None = None
        self.out: list[int] = []


@dataclass(frozen=True)
class _PhraseInfo:
    phrase: str
    # (lexicon_id, attribute) pairs, sorted by lexicon_id
    owners: tuple[tuple[str, AttributeId | None], ...]


class PhraseMatcher:
    """Immutable multi-pattern matcher over one or more lexicons.

    Built once by :func:`compile_matcher`; afterwards it only answers
    ``find_matches`` queries, which are pure, so a single instance can be
    shared freely across threads or requests.
    """

    def __init__(self, lexicons: list[PhraseLexicon]) -> None:
        if not lexicons:
            raise ValueError("at least one lexicon is required")
        ids = [lx.lexicon_id for lx in lexicons]
        dupes = {i for i in ids if ids.count(i) > 1}
        if dupes:
            raise DuplicateLexiconIdError(
                f"duplicate lexicon ids: {', '.join(sorted(dupes))}"
            )
        self._lexicon_ids = tuple(sorted(ids))
        self._kinds = frozenset(lx.kind for lx in lexicons)

        owners: dict[str, list[tuple[str, AttributeId | None]]] = {}
        for lx in sorted(lexicons, key=lambda l: l.lexicon_id):
            for phrase in lx.phrases:
                owners.setdefault(phrase, []).append((lx.lexicon_id, lx.attribute))
        self._phrases: list[_PhraseInfo] = [
            _PhraseInfo(phrase, tuple(owner_list))
            for phrase, owner_list in sorted(owners.items())
        ]
        self._root = self._build_trie()
        self._link_failures()

    @property
    def lexicon_ids(self) -> tuple[str, ...]:
        return self._lexicon_ids

    @property
    def kinds(self) -> frozenset[LexiconKind]:
        """Kinds of the lexicons this matcher was compiled from."""
        return self._kinds

    @property
    def phrase_count(self) -> int:
        return len(self._phrases)

    def _build_trie(self) -> _Node:
        root = _Node()
        for idx, info in enumerate(self._phrases):
            node = root
            for ch in info.phrase:
                node = node.goto.setdefault(ch, _Node())
            node.out.append(idx)
        return root

    def _link_failures(self) -> None:
        # BFS: each node's failure link is the longest proper suffix of its
        # path that is also a trie path; outputs accumulate along the chain.
        root = self._root
        root.fail = root
        queue: deque[_Node] = deque()
        for child in root.goto.values():
            child.fail = root
            queue.append(child)
        while queue:
            node = queue.popleft()
            for ch, child in node.goto.items():
                fallback = node.fail
                while fallback is not root and ch not in fallback.goto:
                    fallback = fallback.fail
                child.fail = fallback.goto.get(ch, root)
                if child.fail is child:
                    child.fail = root
                child.out = child.out + child.fail.out
                queue.append(child)

    def find_matches(self, text: str) -> list[MatchSpan]:
        """All phrase occurrences in ``text``, sorted by (start, end, lexicon_id)."""
        if not text:
            return []
        norm, origin = _normalized_view(text)
        spans: list[MatchSpan] = []
        root = self._root
        node = root
        for pos, ch in enumerate(norm):
            while node is not root and ch not in node.goto:
                node = node.fail
            node = node.goto.get(ch, root)
            for idx in node.out:
                info = self._phrases[idx]
                n_start = pos - len(info.phrase) + 1
                # Phrases never start or end with a space, so both norm
                # edges map to real scalars in the original text.
                start = origin[n_start]
                end = origin[pos] + 1
                if not (is_boundary(text, start) and is_boundary(text, end)):
                    continue
                for lexicon_id, attribute in info.owners:
                    spans.append(
                        MatchSpan(
                            start=start,
                            end=end,
                            lexicon_id=lexicon_id,
                            phrase=info.phrase,
                            attribute=attribute,
                        )
                    )
        spans.sort(key=MatchSpan.sort_key)
        return spans


def _normalized_view(text: str) -> tuple[str, list[int]]:
    """Folded text with whitespace runs collapsed, plus an offset map.

    ``origin[i]`` is the original index of the scalar that produced the
    i-th normalized scalar (the first scalar of a collapsed run).
    """
    chars: list[str] = []
    origin: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            chars.append(" ")
            origin.append(i)
            while i < n and text[i].isspace():
                i += 1
        else:
            chars.append(fold_char(c))
            origin.append(i)
            i += 1
    return "".join(chars), origin


def compile_matcher(lexicons: list[PhraseLexicon]) -> PhraseMatcher:
    """Compile lexicons into one matcher; ids must be unique."""
    return PhraseMatcher(lexicons)


def find_matches(matcher: PhraseMatcher, text: str) -> list[MatchSpan]:
    """Functional form of :meth:`PhraseMatcher.find_matches`."""
    return matcher.find_matches(text)


@dataclass(frozen=True)
class MatcherBundle:
    """The three matchers the pipeline stages consume.

    ``attributes`` and ``gazetteers`` may be absent when the manifest has
    no lexicons of that kind; detection always needs ``profanity``.
    """

    profanity: PhraseMatcher
    attributes: PhraseMatcher | None = None
    gazetteers: PhraseMatcher | None = None


def build_matchers(lexicons: list[PhraseLexicon]) -> MatcherBundle:
    """Group lexicons by kind and compile one matcher per group."""
    by_kind: dict[LexiconKind, list[PhraseLexicon]] = {}
    for lx in lexicons:
        by_kind.setdefault(lx.kind, []).append(lx)
    profanity = by_kind.get(LexiconKind.PROFANITY)
    if not profanity:
        raise ValueError("at least one profanity lexicon is required")
    keywords = by_kind.get(LexiconKind.ATTRIBUTE_KEYWORDS)
    gazetteers = by_kind.get(LexiconKind.GAZETTEER)
    return MatcherBundle(
        profanity=compile_matcher(profanity),
        attributes=compile_matcher(keywords) if keywords else None,
        gazetteers=compile_matcher(gazetteers) if gazetteers else None,
    )


def bundled_manifest_path() -> Path:
    """Path of the small lexicon set shipped with the package.

    These lists exist to exercise the pipeline end to end; production
    deployments should point the manifest at curated lists instead (see
    README for pointers).
    """
    return Path(__file__).parent / "data" / "manifest.json"
