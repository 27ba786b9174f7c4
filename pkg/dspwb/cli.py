"""Командная строка: по подкоманде на каждую задачу, результаты - файлы в каталоге вывода."""
import argparse
import logging
import shutil
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from dspwb import __version__
from dspwb.core.config import Settings, get_settings
from dspwb.core.errors import ParameterError, WorkbenchError
from dspwb.schemas.eeg import ClipLabel, FeatureSelection
from dspwb.schemas.run import RunConfig
from dspwb.schemas.signal import Signal
from dspwb.services import (
    audio,
    biosignal,
    dft_properties,
    eeg,
    fileio,
    signal_core,
    spectral_algebra,
    transform,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_INPUT_FLAGS = ("input", "x1", "x2", "manifest", "sheet", "key", "answers")
_RUN_FIELDS = ("subcommand", "action", "out", "seed")


class _Artifacts:
    """Пути, записанные за запуск; при ошибке удаляются"""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.written: List[Path] = []

    def path(self, name: str) -> Path:
        target = self.out_dir / name
        self.written.append(target)
        return target

    def cleanup(self) -> None:
        for target in reversed(self.written):
            if target.is_dir():
                shutil.rmtree(target, ignore_errors=True)
            elif target.exists():
                target.unlink()
        self.written.clear()


def _crop(x: Signal, n: int, samples=None) -> Signal:
    values = x.samples if samples is None else samples
    return Signal(samples=values[:n], sample_rate=x.sample_rate)


# --- сжатие ---

def _cmd_compress(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    x = fileio.read_wav(p["input"])
    n0 = len(x)
    n = signal_core.next_power_of_two(n0)
    if n != n0:
        logger.warning(f"Padding {n0} samples to {n} for the radix-2 transform; outputs are cropped back")
        x = signal_core.zero_pad(x, n)
    c = audio.fft_compress(x, p["p"])
    k0 = c.k % n if p["k0"] is None else p["k0"]
    x1 = audio.fft_extract(c)
    e = audio.error_signal(x, x1)
    x2 = audio.spectral_shift(e, k0)
    x3 = audio.remodulate(x2, k0)

    fileio.write_wav(out.path("x1.wav"), _crop(x1, n0, x1.real))
    fileio.write_wav(out.path("e.wav"), _crop(e, n0, e.real))
    fileio.write_wav(out.path("x2_mag.wav"), _crop(x2, n0, np.abs(x2.samples)))
    fileio.write_wav(out.path("x3.wav"), _crop(x3, n0, x3.real))
    fileio.write_series(out.path("spectra.csv"), {
        "freq_hz": np.arange(n) * x.sample_rate / n,
        "x": np.abs(transform.dft(x).bins),
        "x1": np.abs(transform.dft(x1).bins),
        "e": np.abs(transform.dft(e).bins),
        "x2": np.abs(transform.dft(x2).bins),
    })
    print(f"frames={n0} N={n} K={c.k} k0={k0} energy x={signal_core.energy(x):.6g} "
          f"x1={signal_core.energy(x1):.6g} e={signal_core.energy(e):.6g}")


# --- пульс ---

def _cmd_heartrate(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    x = fileio.read_csv_signal(p["input"], p["fs"])
    estimates = [biosignal.rate_from_fft(x), biosignal.rate_from_autocorr(x)]
    for est in estimates:
        print(f"{est.method.value}: {est.frequency:.6f} Hz, {est.bpm:.2f} bpm")

    centred = x.with_samples(x.real - x.real.mean())
    freqs, mags = transform.single_sided(transform.dft(centred))
    fileio.write_series(out.path("spectrum.csv"), {"freq_hz": freqs, "magnitude": mags})
    r = signal_core.autocorrelation(centred)
    fileio.write_series(out.path("autocorr.csv"), {"lag": np.arange(len(r)), "r": r.real})


# --- стеганография ---

def _cmd_steg(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    x1 = fileio.read_wav(p["x1"])
    x2 = fileio.read_wav(p["x2"])
    if x1.sample_rate != x2.sample_rate:
        logger.warning(f"Sample rates differ ({x1.sample_rate} vs {x2.sample_rate}); using {x1.sample_rate}")
    n = min(len(x1), len(x2))
    if len(x1) != len(x2):
        logger.warning(f"Trimming inputs to the common length of {n} samples")
    x1 = _crop(x1, n)
    x2 = Signal(samples=x2.samples[:n], sample_rate=x1.sample_rate)
    system = audio.system1 if p["system"] == 1 else audio.system2
    result = system(x1, x2)
    for name in ("z", "y1", "y2"):
        sig = getattr(result, name)
        fileio.write_wav(out.path(f"{name}.wav"), sig.with_samples(sig.real))
    print(f"system {result.system}: wrote z.wav, y1.wav, y2.wav ({n} samples)")


# --- DTFT ---

def _cmd_dtft(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    keys = sorted(transform.dtft_variants()) if p["variant"] == "all" else [p["variant"]]
    grid = transform.default_grid(settings.dsp.grid_points)
    for key in keys:
        result = transform.dtft_variant(key, p["half_width"], grid)
        fileio.write_series(out.path(f"dtft_{key}.csv"), {
            "omega": result.omegas,
            "magnitude": result.magnitude,
            "phase": result.phase,
        })
        print(f"{key}: {transform.dtft_variants()[key]}")


# --- свойства ДПФ ---

def _cmd_quiz(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    action = cfg.action
    if action == "gen":
        items = dft_properties.generate_quiz(p["n"], p["rows"], cfg.seed)
        out.path("quiz_sheet.txt").write_text(dft_properties.format_sheet(items), encoding="utf-8")
        out.path("quiz_key.txt").write_text(dft_properties.format_key(items), encoding="utf-8")
        print(f"wrote {len(items)} items")
    elif action == "check":
        for flag in ("sheet", "key", "answers"):
            if not p.get(flag):
                raise ParameterError(f"dft-quiz check requires --{flag}")
        items = dft_properties.parse_sheet(
            Path(p["sheet"]).read_text(encoding="utf-8"),
            Path(p["key"]).read_text(encoding="utf-8"),
        )
        proposed = dft_properties.parse_key(Path(p["answers"]).read_text(encoding="utf-8"))
        if len(proposed) != len(items):
            raise ParameterError(f"{len(proposed)} answers for {len(items)} quiz items")
        grades = [dft_properties.check_answer(item, answer, settings.dsp.quiz_tolerance)
                  for item, answer in zip(items, proposed)]
        fileio.write_series(out.path("grade.csv"), {
            "item": np.arange(len(grades)),
            "correct": [int(g.correct) for g in grades],
            "matched": [g.matched for g in grades],
            "max_error": [g.max_error for g in grades],
        })
        print(f"{sum(g.correct for g in grades)}/{len(grades)} correct")
    elif action == "table":
        rng = np.random.default_rng(cfg.seed)
        lines = ["row,pattern,rules,passed,max_rel_error"]
        failed = 0
        for row, (pattern, rules) in enumerate(dft_properties.PROPERTY_TABLE, start=1):
            worst, passed = 0.0, True
            for _ in range(p["trials"]):
                x = Signal(samples=rng.standard_normal(6) + 1j * rng.standard_normal(6))
                report = dft_properties.verify_rule(rules, x, settings.dsp.verify_tolerance)
                worst = max(worst, report.max_rel_error)
                passed = passed and report.passed
            failed += not passed
            lines.append(f'{row},"{pattern}","{dft_properties.describe(rules)}",{int(passed)},{worst:.3e}')
        out.path("property_table.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"{len(dft_properties.PROPERTY_TABLE) - failed}/{len(dft_properties.PROPERTY_TABLE)} rows verified")
    else:
        spectra = dft_properties.padding_set()
        rows = ["sequence,k,re,im"]
        for name, spectrum in spectra.items():
            rows += [f'"{name}",{k},{v.real:.17g},{v.imag:.17g}' for k, v in enumerate(spectrum.bins)]
        out.path("padding_dft.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
        print(f"wrote {len(spectra)} spectra")


# --- идеальные спектры ---

def _cmd_convolve(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    label, a, b = spectral_algebra.CONVOLUTION_CASES[p["case"]]
    half = p["range"]
    product = spectral_algebra.multiply(a, b)
    exact = spectral_algebra.convolve_ideal(a, b, (-half, half))
    oracle = spectral_algebra.numeric_convolution_oracle(a, b, p["truncation"])
    start = -half - oracle.origin_index
    numeric = oracle.samples[start:start + len(exact)]
    deviation = float(np.max(np.abs(exact.samples - numeric)))

    text = f"{label}\n{spectral_algebra.render(product)}\nmax |closed form - oracle| = {deviation:.3e}\n"
    out.path(f"conv_{p['case']}.txt").write_text(text, encoding="utf-8")
    fileio.write_series(out.path(f"conv_{p['case']}.csv"), {
        "n": exact.indices,
        "closed_form": exact.samples,
        "oracle": numeric,
    })
    print(text, end="")


# --- ЭЭГ ---

def _selection(cfg: RunConfig, names) -> FeatureSelection:
    p = cfg.params
    return FeatureSelection(
        names=tuple(names),
        band_order=p["order"],
        welch_segments=p["segments"],
        welch_overlap=p["welch_overlap"],
    )


def _write_table(out: _Artifacts, stem: str, table) -> None:
    fileio.write_feature_table(out.path(f"{stem}.csv"), table)
    out.path(f"{stem}.meta.json")
    report = eeg.separability_report(table)
    fileio.write_separability(out.path(f"{stem}_separability.csv"), report)
    for score in report.scores:
        auc = "undefined" if score.auc is None else f"{score.auc:.3f}"
        print(f"{score.feature}: AUC {auc}")


def _cmd_eeg(cfg: RunConfig, out: _Artifacts, settings: Settings) -> None:
    p = cfg.params
    if cfg.action == "synth":
        cs = eeg.synthesize_clipset(cfg.seed, p["clips"], p["ictal"], p["fs"], p["duration"])
        out.path("clipset")
        manifest = fileio.write_clipset(cfg.out_dir / "clipset", cs)
        print(f"wrote {len(cs)} clips ({cs.counts[ClipLabel.ICTAL]} ictal) to {manifest}")
        return

    if not p.get("manifest"):
        raise ParameterError(f"eeg {cfg.action} requires --manifest")
    cs = fileio.read_manifest(p["manifest"])
    if cfg.action == "features":
        names = p["features"].split(",") if p["features"] else list(eeg.FEATURES)
        table = eeg.feature_table(cs, _selection(cfg, names), p["workers"])
        _write_table(out, "features", table)
    elif cfg.action == "hilbert":
        table = eeg.feature_table(cs, _selection(cfg, eeg.HILBERT_FEATURES), p["workers"])
        _write_table(out, "hilbert_features", table)
    else:
        series = eeg.concatenate(cs)
        spec = eeg.spectrogram(series, p["window"], p["overlap"])
        fileio.write_matrix(out.path("spectrogram.csv"), spec.power_db, spec.times, spec.freqs)
        cmp = eeg.compare_psd(cs, p["smoothing"], p["segments"], p["welch_overlap"])
        fileio.write_series(out.path("welch.csv"), {
            "omega": cmp.omegas,
            "ictal": cmp.ictal,
            "interictal": cmp.interictal,
            "difference": cmp.difference,
        })
        print(f"largest PSD difference: {cmp.band[0]:.4f} - {cmp.band[1]:.4f} rad/sample")
        table = eeg.feature_table(cs, _selection(cfg, ["mean_psd"]), p["workers"])
        _write_table(out, "mean_psd", table)


_HANDLERS: Dict[str, Callable[[RunConfig, _Artifacts, Settings], None]] = {
    "compress": _cmd_compress,
    "heartrate": _cmd_heartrate,
    "steg": _cmd_steg,
    "dtft": _cmd_dtft,
    "dft-quiz": _cmd_quiz,
    "convolve-ideal": _cmd_convolve,
    "eeg": _cmd_eeg,
}


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    dsp = settings.dsp
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory (default: $DSPWB_OUT or ./out)")

    parser = argparse.ArgumentParser(prog="dspwb", description=settings.app.project_name)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    cmd = sub.add_parser(
        "compress", parents=[common], help="spectral truncation of a WAV file",
        description="The input is zero-padded to the next power of two N; K = round(p N) bins of the "
                    "padded spectrum are kept and every output WAV is cropped back to the input length.",
    )
    cmd.add_argument("--in", dest="input", required=True)
    cmd.add_argument("--p", type=float, default=0.10, help="kept fraction of the padded length N")
    cmd.add_argument("--k0", type=int, default=None, help="spectral shift in bins (default: K)")

    cmd = sub.add_parser("heartrate", parents=[common], help="heart rate from a PPG CSV")
    cmd.add_argument("--in", dest="input", required=True)
    cmd.add_argument("--fs", type=float, required=True)

    cmd = sub.add_parser("steg", parents=[common], help="hide one WAV file in another")
    cmd.add_argument("--x1", required=True)
    cmd.add_argument("--x2", required=True)
    cmd.add_argument("--system", type=int, choices=(1, 2), default=1)

    cmd = sub.add_parser("dtft", parents=[common], help="DTFT of the sinc variants")
    cmd.add_argument("--variant", choices=sorted(transform.dtft_variants()) + ["all"], default="all")
    cmd.add_argument("--half-width", dest="half_width", type=int, default=200)

    cmd = sub.add_parser("dft-quiz", parents=[common], help="DFT property quizzes and tables")
    cmd.add_argument("action", choices=("gen", "check", "table", "padding"))
    cmd.add_argument("--n", type=int, default=6)
    cmd.add_argument("--rows", type=int, default=15)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--trials", type=int, default=100)
    cmd.add_argument("--sheet")
    cmd.add_argument("--key")
    cmd.add_argument("--answers")

    cmd = sub.add_parser("convolve-ideal", parents=[common], help="convolution of ideal-spectrum sequences")
    cmd.add_argument("--case", choices=sorted(spectral_algebra.CONVOLUTION_CASES), required=True)
    cmd.add_argument("--range", type=int, default=256)
    cmd.add_argument("--truncation", type=int, default=4096)

    cmd = sub.add_parser("eeg", parents=[common], help="EEG seizure features")
    cmd.add_argument("action", choices=("features", "hilbert", "psd", "synth"))
    cmd.add_argument("--manifest")
    cmd.add_argument("--features", default=None, help="comma-separated feature names")
    cmd.add_argument("--order", type=int, default=dsp.eeg_band_order)
    cmd.add_argument("--workers", type=int, default=None)
    cmd.add_argument("--window", type=int, default=dsp.spectrogram_window)
    cmd.add_argument("--overlap", type=int, default=dsp.spectrogram_overlap)
    cmd.add_argument("--segments", type=int, default=dsp.welch_segments)
    cmd.add_argument("--welch-overlap", dest="welch_overlap", type=float, default=dsp.welch_overlap)
    cmd.add_argument("--smoothing", type=int, default=dsp.psd_smoothing)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--clips", type=int, default=596)
    cmd.add_argument("--ictal", type=int, default=178)
    cmd.add_argument("--fs", type=float, default=400.0)
    cmd.add_argument("--duration", type=float, default=1.0)
    return parser


def _config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    values = vars(args)
    return RunConfig(
        subcommand=args.subcommand,
        action=values.get("action"),
        inputs=[Path(values[flag]) for flag in _INPUT_FLAGS if values.get(flag)],
        out_dir=Path(args.out) if args.out else settings.output.out_dir,
        params={k: v for k, v in values.items() if k not in _RUN_FIELDS},
        seed=values.get("seed"),
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.app.log_level, format=LOG_FORMAT)
    args = build_parser(settings).parse_args(argv)

    out = None
    try:
        cfg = _config(args, settings)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        out = _Artifacts(cfg.out_dir)
        logger.info(f"Running {cfg.subcommand} {cfg.action or ''} into {cfg.out_dir}")
        _HANDLERS[cfg.subcommand](cfg, out, settings)
    except (WorkbenchError, OSError, ValueError) as exc:
        if out is not None:
            out.cleanup()
        message = " ".join(str(exc).split())
        print(f"dspwb: error: {message}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
