"""Правила свойств ДПФ в замкнутой форме, их проверка и генератор опросов.

Движок ведёт пару (x, X): для каждого правила известны и образ
последовательности, и его спектр, поэтому цепочки через DftOfDft
не требуют вычисления преобразований.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from dspwb.core.errors import ParameterError, ShapeError, UnsupportedRuleError
from dspwb.schemas.properties import GradeResult, PropertyRule, QuizItem, RuleKind, RuleReport, Side
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import Spectrum
from dspwb.services import signal_core
from dspwb.services.transform import dft, direct_dft

logger = logging.getLogger(__name__)

RuleChain = Union[PropertyRule, Sequence[PropertyRule]]


def _chain(rules: RuleChain) -> Tuple[PropertyRule, ...]:
    if isinstance(rules, PropertyRule):
        return (rules,)
    return tuple(rules)


def _check(rule: PropertyRule, n: int) -> None:
    if rule.kind is RuleKind.SIGN_ALTERNATE and n % 2:
        raise UnsupportedRuleError(
            f"sign alternation on odd length {n} is a half-bin shift with no closed form"
        )
    if rule.kind is RuleKind.MODULATE_BY and rule.k0 != int(rule.k0):
        raise UnsupportedRuleError(f"modulation by non-integer k0={rule.k0} has no closed form")


def _reverse(v: np.ndarray) -> np.ndarray:
    return np.roll(v[::-1], 1)


def _pair_step(
    rule: PropertyRule, time: Optional[np.ndarray], spec: np.ndarray
) -> Tuple[Optional[np.ndarray], np.ndarray]:
    n = spec.size
    k = np.arange(n)
    kind = rule.kind

    def on_time(fn):
        return None if time is None else fn(time)

    if kind is RuleKind.DFT_OF_DFT:
        if time is None:
            raise ParameterError("predicting DftOfDft needs the time-domain sequence")
        return spec.copy(), n * _reverse(time)
    if kind is RuleKind.REVERSE:
        return on_time(_reverse), _reverse(spec)
    if kind is RuleKind.CONJUGATE:
        return on_time(np.conj), np.conj(_reverse(spec))
    if kind is RuleKind.CONJUGATE_REVERSE:
        return on_time(lambda t: np.conj(_reverse(t))), np.conj(spec)
    if kind is RuleKind.SIGN_ALTERNATE:
        signs = np.where(k % 2 == 0, 1.0, -1.0)
        return on_time(lambda t: signs * t), np.roll(spec, -(n // 2))
    if kind is RuleKind.CIRCULAR_SHIFT:
        m = rule.shift
        phase = np.exp(-2j * np.pi * ((k * m) % n) / n)
        return on_time(lambda t: np.roll(t, m % n)), spec * phase
    if kind is RuleKind.REPEAT:
        r = rule.factor
        out = np.zeros(n * r, dtype=complex)
        out[::r] = r * spec
        return on_time(lambda t: np.tile(t, r)), out
    if kind is RuleKind.ZERO_INTERLEAVE:
        L = rule.factor

        def interleave(t):
            out = np.zeros(n * L, dtype=complex)
            out[::L] = t
            return out

        return on_time(interleave), np.tile(spec, L)
    if kind is RuleKind.MODULATE_BY:
        k0 = int(rule.k0)
        carrier = np.exp(2j * np.pi * ((k0 * k) % n) / n)
        return on_time(lambda t: t * carrier), np.roll(spec, k0)
    if kind is RuleKind.STRETCH:
        r = rule.factor
        big = np.arange(n * r)
        hold = sum(np.exp(-2j * np.pi * ((big * i) % (n * r)) / (n * r)) for i in range(r))
        return on_time(lambda t: np.repeat(t, r)), np.tile(spec, r) * hold
    if kind is RuleKind.SCALE:
        return on_time(lambda t: rule.gain * t), rule.gain * spec
    raise UnsupportedRuleError(f"unknown rule kind {kind}")


def _time_step(rule: PropertyRule, x: Signal) -> Signal:
    kind = rule.kind
    if kind is RuleKind.DFT_OF_DFT:
        return Signal(samples=dft(x).bins)
    if kind is RuleKind.REVERSE:
        return signal_core.circular_reverse(x)
    if kind is RuleKind.CONJUGATE:
        return signal_core.conjugate(x)
    if kind is RuleKind.CONJUGATE_REVERSE:
        return signal_core.conjugate(signal_core.circular_reverse(x))
    if kind is RuleKind.SIGN_ALTERNATE:
        return signal_core.alternate_sign(x)
    if kind is RuleKind.CIRCULAR_SHIFT:
        return signal_core.circular_shift(x, rule.shift)
    if kind is RuleKind.REPEAT:
        return signal_core.repeat(x, rule.factor)
    if kind is RuleKind.ZERO_INTERLEAVE:
        return signal_core.zero_interleave(x, rule.factor)
    if kind is RuleKind.MODULATE_BY:
        return signal_core.modulate(x, rule.k0)
    if kind is RuleKind.STRETCH:
        return x.with_samples(np.repeat(x.samples, rule.factor))
    if kind is RuleKind.SCALE:
        return x.with_samples(rule.gain * x.samples)
    raise UnsupportedRuleError(f"unknown rule kind {kind}")


def apply_rule_time(rules: RuleChain, x: Signal) -> Signal:
    """Образ последовательности под действием правила (или цепочки правил)"""
    current = Signal(samples=x.samples)
    for rule in _chain(rules):
        _check(rule, len(current))
        current = _time_step(rule, current)
    return current


def _predict_pair(
    rules: RuleChain, time: Optional[np.ndarray], spec: np.ndarray
) -> Tuple[Optional[np.ndarray], np.ndarray]:
    for rule in _chain(rules):
        _check(rule, spec.size)
        time, spec = _pair_step(rule, time, spec)
    return time, spec


def predict_spectrum(rules: RuleChain, X: Spectrum, x: Optional[Signal] = None) -> Spectrum:
    """Спектр образа, полученный только из замкнутых формул"""
    time = None if x is None else np.asarray(x.samples)
    if time is not None and time.size != X.n:
        raise ShapeError(f"sequence length {time.size} differs from spectrum length {X.n}")
    _, bins = _predict_pair(rules, time, np.asarray(X.bins))
    return Spectrum(bins=bins, n=bins.size)


def describe(rules: RuleChain) -> str:
    return " > ".join(rule.label for rule in _chain(rules))


def verify_rule(rules: RuleChain, x: Signal, tolerance: float = 1e-9) -> RuleReport:
    """Сравнивает прямое ДПФ образа с предсказанием замкнутой формы"""
    image = apply_rule_time(rules, x)
    measured = direct_dft(image).bins
    predicted = predict_spectrum(rules, direct_dft(x), x).bins
    if measured.size != predicted.size:
        raise ShapeError(f"predicted length {predicted.size} differs from measured {measured.size}")
    scale = max(float(np.max(np.abs(measured))), np.finfo(float).tiny)
    error = float(np.max(np.abs(measured - predicted))) / scale
    report = RuleReport(
        label=describe(rules),
        n_in=len(x),
        n_out=measured.size,
        max_rel_error=error,
        passed=error <= tolerance,
    )
    if not report.passed:
        logger.warning(f"Rule {report.label} failed on N={len(x)}: relative error {error:.3e}")
    return report


def _rule(kind: RuleKind, **params) -> PropertyRule:
    return PropertyRule(kind=kind, **params)


_DD = _rule(RuleKind.DFT_OF_DFT)
_REV = _rule(RuleKind.REVERSE)

# строки таблицы для N = 6: последовательность через (a..f) / (A..F)
PROPERTY_TABLE: List[Tuple[str, Tuple[PropertyRule, ...]]] = [
    ("(A, B, C, D, E, F)", (_DD,)),
    ("(A, F, E, D, C, B)", (_DD, _REV)),
    ("(A*, B*, C*, D*, E*, F*)", (_DD, _rule(RuleKind.CONJUGATE))),
    ("(A, F, E, D, C, B) again", (_DD, _REV)),
    ("(a*, b*, c*, d*, e*, f*)", (_rule(RuleKind.CONJUGATE),)),
    ("(a, f, e, d, c, b)", (_REV,)),
    ("(a*, f*, e*, d*, c*, b*)", (_rule(RuleKind.CONJUGATE_REVERSE),)),
    ("(a, -b, c, -d, e, -f)", (_rule(RuleKind.SIGN_ALTERNATE),)),
    ("(a, -f, e, -d, c, -b)", (_REV, _rule(RuleKind.SIGN_ALTERNATE))),
    ("(a, 0, b, 0, ..., f, 0)", (_rule(RuleKind.ZERO_INTERLEAVE, factor=2),)),
    ("(A, ..., F, A, ..., F)", (_DD, _rule(RuleKind.REPEAT, factor=2))),
    ("(A, 0, B, 0, ..., F, 0)", (_DD, _rule(RuleKind.ZERO_INTERLEAVE, factor=2))),
    (
        "(A/6, 0, F/6, 0, ..., B/6, 0)",
        (_DD, _REV, _rule(RuleKind.ZERO_INTERLEAVE, factor=2), _rule(RuleKind.SCALE, gain=1 / 6)),
    ),
    (
        "(A/12, F/12, ..., B/12) twice",
        (_DD, _REV, _rule(RuleKind.REPEAT, factor=2), _rule(RuleKind.SCALE, gain=1 / 12)),
    ),
    (
        "(D, 0, E, 0, F, 0, A, 0, B, 0, C, 0)",
        (_DD, _rule(RuleKind.CIRCULAR_SHIFT, shift=-3), _rule(RuleKind.ZERO_INTERLEAVE, factor=2)),
    ),
]


def padding_set() -> Dict[str, Spectrum]:
    """ДПФ семи последовательностей на основе [2, 3, 4, 5, 6]"""
    base = Signal(samples=[2, 3, 4, 5, 6])
    return {
        "[2,3,4,5,6]": dft(base),
        "FFT[FFT[2,3,4,5,6]]": dft(Signal(samples=dft(base).bins)),
        "[2,3,4,5,6,0,0,0,0,0]": dft(signal_core.zero_pad(base, 10)),
        "[2,3,4,5,6,2,3,4,5,6]": dft(signal_core.repeat(base, 2)),
        "[2,2,3,3,4,4,5,5,6,6]": dft(apply_rule_time(_rule(RuleKind.STRETCH, factor=2), base)),
        "[4,5,6,2,3]": dft(signal_core.circular_shift(base, -2)),
        "[2,-3,4,-5,6]": dft(signal_core.alternate_sign(base)),
    }


def _draw_rule(rng: np.random.Generator, n: int) -> PropertyRule:
    kinds = [kind for kind in RuleKind if kind is not RuleKind.SCALE]
    if n % 2:
        kinds.remove(RuleKind.SIGN_ALTERNATE)
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind is RuleKind.CIRCULAR_SHIFT:
        return _rule(kind, shift=int(rng.integers(1, n)) if n > 1 else 0)
    if kind in (RuleKind.REPEAT, RuleKind.ZERO_INTERLEAVE, RuleKind.STRETCH):
        return _rule(kind, factor=int(rng.integers(2, 4)))
    if kind is RuleKind.MODULATE_BY:
        return _rule(kind, k0=float(rng.integers(1, n)) if n > 1 else 0.0)
    return _rule(kind)


def generate_quiz(n: int, rows: int, seed: int) -> List[QuizItem]:
    """Детерминированный лист заданий в духе таблицы свойств ДПФ"""
    if n < 1 or rows < 1:
        raise ParameterError(f"quiz needs n >= 1 and rows >= 1, got n={n}, rows={rows}")
    rng = np.random.default_rng(seed)
    items = []
    for _ in range(rows):
        rule = _draw_rule(rng, n)
        side = Side.TIME if rng.integers(2) == 0 else Side.FREQUENCY
        x = rng.integers(-9, 10, n) + 1j * rng.integers(-9, 10, n)
        X = dft(Signal(samples=x)).bins
        time_image, spec_image = _predict_pair(rule, x, X)
        given, answer = (x, spec_image) if side is Side.TIME else (X, time_image)
        items.append(QuizItem(given_side=side, given_seq=given, rule=rule, answer_seq=answer))
    logger.info(f"Generated {rows} quiz items with n={n}, seed={seed}")
    return items


def check_answer(item: QuizItem, proposed, tolerance: float = 1e-6) -> GradeResult:
    if item.answer_seq is None:
        raise ParameterError("quiz item carries no answer key")
    answer = item.answer_seq
    proposed = np.asarray(proposed, dtype=complex).ravel()
    if proposed.size != answer.size:
        raise ShapeError(f"expected {answer.size} values, got {proposed.size}")
    errors = np.abs(proposed - answer)
    floor = max(1e-3 * float(np.max(np.abs(answer))), 1e-300)
    wrong = np.flatnonzero(errors > tolerance * np.maximum(np.abs(answer), floor))
    return GradeResult(
        correct=wrong.size == 0,
        matched=int(answer.size - wrong.size),
        total=int(answer.size),
        first_mismatch=int(wrong[0]) if wrong.size else None,
        max_error=float(np.max(errors)),
    )


def format_vector(values) -> str:
    return "[" + ",".join(f"{float(z.real)!r}:{float(z.imag)!r}" for z in np.asarray(values, dtype=complex)) + "]"


def parse_vector(text: str) -> np.ndarray:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParameterError(f"malformed vector literal {text!r}")
    body = body[1:-1]
    if not body:
        return np.zeros(0, dtype=complex)
    values = []
    for token in body.split(","):
        re_part, _, im_part = token.partition(":")
        values.append(complex(float(re_part), float(im_part or 0.0)))
    return np.array(values, dtype=complex)


def format_sheet(items: Sequence[QuizItem]) -> str:
    return "".join(
        f"{item.given_side.value} {item.rule.kind.value} {item.rule.params_text()} "
        f"given={format_vector(item.given_seq)}\n"
        for item in items
    )


def format_key(items: Sequence[QuizItem]) -> str:
    return "".join(f"{i} answer={format_vector(item.answer_seq)}\n" for i, item in enumerate(items))


def parse_key(text: str) -> List[np.ndarray]:
    answers = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        _, _, vector = line.partition("answer=")
        if not vector:
            raise ParameterError(f"line {line_no}: missing answer=[...]")
        answers.append(parse_vector(vector))
    return answers


def parse_sheet(text: str, key: Optional[str] = None) -> List[QuizItem]:
    answers = parse_key(key) if key is not None else None
    items = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            side, kind, params, given = line.split(" ", 3)
            given_side = Side(side)
            rule = PropertyRule.from_text(kind, params)
            given_seq = parse_vector(given.partition("given=")[2])
        except ValueError as exc:
            raise ParameterError(f"line {line_no}: {exc}") from exc
        answer = answers[len(items)] if answers is not None and len(items) < len(answers) else None
        items.append(QuizItem(given_side=given_side, given_seq=given_seq, rule=rule, answer_seq=answer))
    return items
