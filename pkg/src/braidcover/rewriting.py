"""Derivation certificates for identities in finitely presented groups.

A Derivation witnesses an equality u = v in the group presented by a
Presentation.  It is a sequence of elementary moves, each of which
preserves the group element represented by the current word:

  InsertRelatorConjugate  insert c r^±1 c^-1 at a position
  DeleteRelatorConjugate  delete an exact occurrence of c r^±1 c^-1
  FreeCancel              delete an adjacent pair g^e g^-e
  FreeInsert              insert c c^-1 at a position

Replay is exact on letter sequences: no implicit free reduction happens
between steps, so certificates are deterministic and positionally stable.
Soundness is immediate: every move multiplies by a relator conjugate or
by a word freely equal to the identity.

The search half of the module finds certificates for short identities by
best-first insertion of cyclic rotations of relators (and of previously
certified auxiliary identities, whose uses are compiled away so that the
final certificate only ever references presentation relators).
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field

from .presentations import Presentation
from .words import EMPTY, BraidWord, Letter, format_word, parse_word

INSERT_RELATOR = "InsertRelatorConjugate"
DELETE_RELATOR = "DeleteRelatorConjugate"
FREE_CANCEL = "FreeCancel"
FREE_INSERT = "FreeInsert"

ACTIONS = (INSERT_RELATOR, DELETE_RELATOR, FREE_CANCEL, FREE_INSERT)


class DerivationError(ValueError):
    """Raised on a malformed or inapplicable step; carries the step index."""

    def __init__(self, step_index: int, message: str):
        super().__init__(f"step {step_index}: {message}")
        self.step_index = step_index


@dataclass(frozen=True)
class DerivationStep:
    action: str
    position: int
    relator_index: int = 0
    inverse_flag: bool = False
    conjugator: BraidWord = EMPTY

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise ValueError(f"unknown action {self.action!r}")
        if self.position < 0:
            raise ValueError("negative position")


@dataclass(frozen=True)
class Derivation:
    source: BraidWord
    target: BraidWord
    steps: tuple[DerivationStep, ...]

    def to_json(self) -> str:
        payload = {
            "format": "derivation-v1",
            "from": format_word(self.source),
            "to": format_word(self.target),
            "steps": [
                {
                    "action": s.action,
                    "position": s.position,
                    "relator_index": s.relator_index,
                    "inverse_flag": s.inverse_flag,
                    "conjugator": format_word(s.conjugator),
                }
                for s in self.steps
            ],
        }
        return json.dumps(payload, indent=1)

    @staticmethod
    def from_json(text: str) -> "Derivation":
        payload = json.loads(text)
        if payload.get("format") != "derivation-v1":
            raise ValueError("unknown certificate format")
        steps = tuple(
            DerivationStep(
                action=s["action"],
                position=s["position"],
                relator_index=s.get("relator_index", 0),
                inverse_flag=s.get("inverse_flag", False),
                conjugator=parse_word(s.get("conjugator", "")),
            )
            for s in payload["steps"]
        )
        return Derivation(parse_word(payload["from"]), parse_word(payload["to"]), steps)


def _inserted_word(p: Presentation, step: DerivationStep, index: int) -> BraidWord:
    if not (0 <= step.relator_index < len(p.relators)):
        raise DerivationError(index, f"relator index {step.relator_index} out of range")
    r = p.relators[step.relator_index]
    if step.inverse_flag:
        r = r.inverse()
    return step.conjugator * r * step.conjugator.inverse()


def apply_step(p: Presentation, w: BraidWord, step: DerivationStep, index: int = 0) -> BraidWord:
    """Apply one move to w, raising DerivationError if it does not apply."""
    letters = w.letters
    pos = step.position
    if step.action == INSERT_RELATOR:
        if pos > len(letters):
            raise DerivationError(index, f"position {pos} beyond word of length {len(letters)}")
        ins = _inserted_word(p, step, index)
        return BraidWord(letters[:pos] + ins.letters + letters[pos:])
    if step.action == DELETE_RELATOR:
        ins = _inserted_word(p, step, index)
        k = len(ins)
        if letters[pos : pos + k] != ins.letters:
            raise DerivationError(index, "relator conjugate not present at position")
        return BraidWord(letters[:pos] + letters[pos + k :])
    if step.action == FREE_CANCEL:
        if pos + 1 >= len(letters):
            raise DerivationError(index, "cancel position beyond word end")
        (g1, e1), (g2, e2) = letters[pos], letters[pos + 1]
        if g1 != g2 or e1 != -e2:
            raise DerivationError(index, "letters at position are not an inverse pair")
        return BraidWord(letters[:pos] + letters[pos + 2 :])
    # FREE_INSERT
    if pos > len(letters):
        raise DerivationError(index, f"position {pos} beyond word of length {len(letters)}")
    if len(step.conjugator) == 0:
        raise DerivationError(index, "free insert needs a nonempty word")
    c = step.conjugator
    pair = c * c.inverse()
    return BraidWord(letters[:pos] + pair.letters + letters[pos:])


def replay(p: Presentation, d: Derivation) -> BraidWord:
    w = d.source
    for i, step in enumerate(d.steps):
        w = apply_step(p, w, step, i)
    return w


def verify_derivation(p: Presentation, d: Derivation) -> bool:
    """True iff replay succeeds and lands exactly on the target word."""
    try:
        final = replay(p, d)
    except DerivationError:
        return False
    return final.letters == d.target.letters


# ---------------------------------------------------------------------------
# proof algebra: mechanical step-sequence constructors


def reduction_steps(w: BraidWord) -> tuple[list[DerivationStep], BraidWord]:
    """FreeCancels performing canonical (leftmost-pair) free reduction of w."""
    steps: list[DerivationStep] = []
    letters = list(w.letters)
    while True:
        for i in range(len(letters) - 1):
            (g1, e1), (g2, e2) = letters[i], letters[i + 1]
            if g1 == g2 and e1 == -e2:
                steps.append(DerivationStep(FREE_CANCEL, i))
                del letters[i : i + 2]
                break
        else:
            break
    return steps, BraidWord(tuple(letters))


def pair_insert_steps(c: BraidWord, pos: int) -> list[DerivationStep]:
    """Single-letter FreeInserts building the literal word c c^-1 at pos."""
    steps = []
    for i, let in enumerate(c.letters):
        steps.append(DerivationStep(FREE_INSERT, pos + i, conjugator=BraidWord((let,))))
    return steps


def shift_steps(steps, offset: int) -> list[DerivationStep]:
    """Re-anchor a step sequence inside a larger word with a stable prefix."""
    return [
        DerivationStep(s.action, s.position + offset, s.relator_index, s.inverse_flag, s.conjugator)
        for s in steps
    ]


def invert_steps(p: Presentation, start: BraidWord, steps) -> list[DerivationStep]:
    """Steps transforming replay(start, steps) back to start, by replaying
    forward and emitting each step's exact inverse in reverse order."""
    out: list[DerivationStep] = []
    w = start
    for i, step in enumerate(steps):
        if step.action == INSERT_RELATOR:
            inv = [DerivationStep(DELETE_RELATOR, step.position, step.relator_index, step.inverse_flag, step.conjugator)]
        elif step.action == DELETE_RELATOR:
            inv = [DerivationStep(INSERT_RELATOR, step.position, step.relator_index, step.inverse_flag, step.conjugator)]
        elif step.action == FREE_CANCEL:
            let = w.letters[step.position]
            inv = [DerivationStep(FREE_INSERT, step.position, conjugator=BraidWord((let,)))]
        else:  # FREE_INSERT of c c^-1: cancel from the innermost pair outwards
            k = len(step.conjugator)
            inv = [DerivationStep(FREE_CANCEL, step.position + k - 1 - j) for j in range(k)]
        out = inv + out
        w = apply_step(p, w, step, i)
    return out


def concat_derivations(a: Derivation, b: Derivation) -> Derivation:
    if a.target.letters != b.source.letters:
        raise ValueError("derivations do not chain")
    return Derivation(a.source, b.target, a.steps + b.steps)


def invert_derivation(p: Presentation, d: Derivation) -> Derivation:
    return Derivation(d.target, d.source, tuple(invert_steps(p, d.source, d.steps)))


# ---------------------------------------------------------------------------
# certificate search


@dataclass(frozen=True)
class SearchBudget:
    max_candidates: int = 1_000_000
    max_length: int | None = None  # default: 4 * max(|from|, |to|, longest relator)

    def length_cap(self, source: BraidWord, target: BraidWord, relators) -> int:
        if self.max_length is not None:
            return self.max_length
        longest = max((len(r) for r in relators), default=1)
        return 4 * max(len(source), len(target), longest, 1)


@dataclass(frozen=True)
class SearchStats:
    candidates: int
    expanded: int
    found: bool


class NotFound(Exception):
    def __init__(self, stats: SearchStats):
        super().__init__(f"no certificate within budget ({stats.candidates} candidates)")
        self.stats = stats


@dataclass(frozen=True)
class Lemma:
    """A certified auxiliary identity, stored as its trivial relator word L
    together with presentation-only step sequences building L and L^-1
    from the empty word (used to compile lemma applications away)."""

    name: str
    relator: BraidWord
    build: tuple[DerivationStep, ...]
    build_inverse: tuple[DerivationStep, ...]


def _lemma_from_proof(p: Presentation, name: str, proof: Derivation) -> Lemma:
    """proof must certify (L -> empty) with presentation-only steps."""
    L = proof.source
    build = invert_steps(p, L, proof.steps)  # empty -> L
    # empty -> L^-1: invert (L^-1 -> L^-1 L -> empty)
    fwd: list[DerivationStep] = list(shift_steps(build, len(L)))
    for j in range(len(L)):
        fwd.append(DerivationStep(FREE_CANCEL, len(L) - 1 - j))
    build_inv = invert_steps(p, L.inverse(), fwd)
    return Lemma(name, L, tuple(build), tuple(build_inv))


class _MoveTable:
    """Precompiled insertion moves: all cyclic rotations of every relator
    and lemma relator and of their inverses, encoded over small ints."""

    def __init__(self, p: Presentation, lemmas: tuple[Lemma, ...],
                 relator_subset=None):
        self.presentation = p
        gens: list = []
        for r in itertools.chain(p.relators, (l.relator for l in lemmas)):
            for g, _e in r:
                if g not in gens:
                    gens.append(g)
        for g in p.generators:
            if g not in gens:
                gens.append(g)
        self.gen_list = gens
        self.gen_code = {g: 2 * i for i, g in enumerate(gens)}
        self.moves: list[tuple[int, ...]] = []
        # compile info per move: (kind, ref, inverse_flag, rotation)
        self.origins: list[tuple[str, int, bool, int]] = []
        seen: set[tuple[int, ...]] = set()
        allowed = set(range(len(p.relators))) if relator_subset is None else set(relator_subset)
        sources = [("relator", i, r) for i, r in enumerate(p.relators) if i in allowed]
        sources += [("lemma", i, l.relator) for i, l in enumerate(lemmas)]
        for kind, ref, base in sources:
            for inv in (False, True):
                word = base.inverse() if inv else base
                enc = self.encode(word)
                for k in range(len(enc)):
                    rot = enc[k:] + enc[:k]
                    if rot in seen:
                        continue
                    seen.add(rot)
                    self.moves.append(rot)
                    self.origins.append((kind, ref, inv, k))
        self.lemmas = lemmas
        # moves indexed by the letter their first/last letter cancels against
        self.by_first: dict[int, list[int]] = {}
        self.by_last: dict[int, list[int]] = {}
        for mi, mv in enumerate(self.moves):
            self.by_first.setdefault(mv[0] ^ 1, []).append(mi)
            self.by_last.setdefault(mv[-1] ^ 1, []).append(mi)

    def encode(self, w: BraidWord) -> tuple[int, ...]:
        return tuple(self.gen_code[g] + (1 if e < 0 else 0) for g, e in w)

    def decode(self, enc) -> BraidWord:
        letters: list[Letter] = []
        for code in enc:
            letters.append((self.gen_list[code // 2], -1 if code % 2 else 1))
        return BraidWord(tuple(letters))


def _reduce_enc(letters) -> tuple[int, ...]:
    out: list[int] = []
    for code in letters:
        if out and out[-1] == code ^ 1:
            out.pop()
        else:
            out.append(code)
    return tuple(out)


def _search_reduced(table: _MoveTable, start: tuple[int, ...], goal: tuple[int, ...],
                    budget: SearchBudget, cap: int):
    """Best-first search on free-reduced encoded words.  Neighbors insert a
    relator (or lemma) rotation at a position where it cancels against the
    word boundary; bare insertions are allowed only into the empty word.
    Returns the move path as [(move_index, position, word_before)]."""
    if start == goal:
        return [], SearchStats(0, 0, True)
    counter = itertools.count()
    # priority len + 3*depth: long plateaus of same-length shuffle moves
    # are explored breadth-last, short derivations first
    heap = [(len(start), next(counter), start, 0)]
    parent: dict[tuple[int, ...], tuple] = {start: None}
    candidates = 0
    expanded = 0
    moves = table.moves
    while heap:
        _, _, w, depth = heapq.heappop(heap)
        expanded += 1
        lw = len(w)
        if lw == 0:
            pairs = [(mi, 0) for mi in range(len(moves))]
        else:
            # insertions that cancel against the left or right boundary letter
            pairs = []
            for q in range(lw + 1):
                if q > 0:
                    pairs.extend((mi, q) for mi in table.by_first.get(w[q - 1], ()))
                if q < lw:
                    pairs.extend(
                        (mi, q)
                        for mi in table.by_last.get(w[q], ())
                        if not (q > 0 and moves[mi][0] ^ 1 == w[q - 1])
                    )
        for mi, q in pairs:
            mv = moves[mi]
            cand = _reduce_enc(w[:q] + mv + w[q:])
            candidates += 1
            if candidates > budget.max_candidates:
                raise NotFound(SearchStats(candidates, expanded, False))
            if len(cand) > cap or cand in parent:
                continue
            parent[cand] = (w, mi, q)
            if cand == goal:
                path = []
                node = cand
                while parent[node] is not None:
                    prev, mj, pos = parent[node]
                    path.append((mj, pos, prev))
                    node = prev
                path.reverse()
                return path, SearchStats(candidates, expanded, True)
            heapq.heappush(heap, (len(cand) + 3 * (depth + 1), next(counter), cand, depth + 1))
    raise NotFound(SearchStats(candidates, expanded, False))


def _compile_path(table: _MoveTable, start_word: BraidWord, path) -> list[DerivationStep]:
    """Expand search moves into presentation-only steps with canonical
    free reduction after each insertion."""
    p = table.presentation
    steps: list[DerivationStep] = []
    w = start_word
    for mi, pos, _before in path:
        kind, ref, inv, rot = table.origins[mi]
        base = p.relators[ref] if kind == "relator" else table.lemmas[ref].relator
        if inv:
            base = base.inverse()
        prefix = BraidWord(base.letters[:rot])
        if kind == "relator":
            steps.append(DerivationStep(INSERT_RELATOR, pos, ref, inv, prefix.inverse()))
            w = apply_step(p, w, steps[-1])
        else:
            lem = table.lemmas[ref]
            pre = pair_insert_steps(prefix.inverse(), pos)
            for s in pre:
                steps.append(s)
                w = apply_step(p, w, s)
            body = lem.build_inverse if inv else lem.build
            for s in shift_steps(body, pos + len(prefix)):
                steps.append(s)
                w = apply_step(p, w, s)
        red, w = reduction_steps(w)
        steps.extend(red)
    return steps


def find_equality(p: Presentation, source: BraidWord, target: BraidWord,
                  budget: SearchBudget = SearchBudget(),
                  lemmas: tuple[Lemma, ...] = (),
                  relator_subset=None) -> Derivation:
    """Certificate for source = target in the presented group, or NotFound.

    The returned derivation references only presentation relators; lemma
    applications found by the search are compiled into their stored
    presentation-level step sequences.
    """
    table = _MoveTable(p, lemmas, relator_subset)
    pre_steps, src_red = reduction_steps(source)
    tgt_red_steps, tgt_red = reduction_steps(target)
    cap = budget.length_cap(source, target, p.relators)
    path, _stats = _search_reduced(
        table, table.encode(src_red), table.encode(tgt_red), budget, cap
    )
    steps = list(pre_steps)
    steps += _compile_path(table, src_red, path)
    steps += invert_steps(p, target, tgt_red_steps)
    d = Derivation(source, target, tuple(steps))
    if not verify_derivation(p, d):  # self-check; compile bugs must not escape
        raise AssertionError("compiled certificate failed replay")
    return d


def search_identity(p: Presentation, w: BraidWord,
                    budget: SearchBudget = SearchBudget(),
                    lemmas: tuple[Lemma, ...] = (),
                    relator_subset=None) -> Derivation:
    """Certificate that w is trivial in the presented group, or NotFound."""
    return find_equality(p, w, EMPTY, budget, lemmas, relator_subset)
