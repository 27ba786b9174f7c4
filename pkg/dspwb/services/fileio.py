"""Чтение и запись WAV (PCM-16), CSV-сигналов, манифестов клипов и таблиц признаков."""
import csv
import io
import json
import logging
import struct
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from dspwb.core.errors import ParseError
from dspwb.schemas.eeg import Clip, ClipLabel, ClipSet, FeatureTable, SeparabilityReport
from dspwb.schemas.fileio import PCM_FORMAT, WavFile
from dspwb.schemas.signal import Signal

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FULL_SCALE = 32768.0
MANIFEST_FIELDS = ("id", "path", "label", "fs")


# --- WAV ---

def _parse_wav(data: bytes, source: str) -> WavFile:
    if len(data) < 12:
        raise ParseError(source, "byte 0", "file is too short for a RIFF header")
    riff, _, wave = struct.unpack("<4sI4s", data[:12])
    if riff != b"RIFF":
        raise ParseError(source, "byte 0", f"expected 'RIFF', found {riff!r}")
    if wave != b"WAVE":
        raise ParseError(source, "byte 8", f"expected 'WAVE', found {wave!r}")

    fmt = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id, size = struct.unpack("<4sI", data[offset:offset + 8])
        body = offset + 8
        if chunk_id == b"fmt ":
            if size < 16 or body + 16 > len(data):
                raise ParseError(source, f"byte {offset}", f"fmt chunk of {size} bytes is too short")
            tag, channels, rate, _, _, bits = struct.unpack("<HHIIHH", data[body:body + 16])
            if tag != PCM_FORMAT:
                raise ParseError(source, f"byte {body}", f"format code {tag} is not PCM ({PCM_FORMAT})")
            if bits != 16:
                raise ParseError(source, f"byte {body + 14}", f"{bits}-bit samples are not supported; expected 16")
            if channels < 1 or rate < 1:
                raise ParseError(source, f"byte {body}", f"invalid fmt chunk: {channels} channels at {rate} Hz")
            fmt = (channels, rate)
        elif chunk_id == b"data":
            if fmt is None:
                raise ParseError(source, f"byte {offset}", "data chunk precedes fmt chunk")
            channels, rate = fmt
            size = min(size, len(data) - body)
            return WavFile(channels=channels, fs=rate, frames=size // (2 * channels), data_offset=body)
        # чанки выровнены по чётной границе
        offset = body + size + (size & 1)
    raise ParseError(source, f"byte {offset}", "no data chunk found")


def inspect_wav(path: PathLike) -> WavFile:
    return _parse_wav(Path(path).read_bytes(), str(path))


def read_wav(path: PathLike) -> Signal:
    return decode_wav(Path(path).read_bytes(), str(path))


def decode_wav(data: bytes, path: str = "<upload>") -> Signal:
    """Канал 0, нормированный в [-1, 1)"""
    info = _parse_wav(data, path)
    count = info.frames * info.channels
    pcm = np.frombuffer(data, dtype="<i2", count=count, offset=info.data_offset)
    if info.channels > 1:
        logger.warning(f"{path}: {info.channels} channels found, keeping channel 0")
        pcm = pcm[::info.channels]
    if pcm.size == 0:
        raise ParseError(path, f"byte {info.data_offset}", "data chunk holds no samples")
    logger.info(f"Read {pcm.size} samples at {info.fs} Hz from {path}")
    return Signal(samples=pcm.astype(float) / FULL_SCALE, sample_rate=float(info.fs))


def write_wav(path: PathLike, x: Signal) -> None:
    Path(path).write_bytes(encode_wav(x, str(path)))


def encode_wav(x: Signal, path: str = "<memory>") -> bytes:
    """Моно PCM-16; вещественная часть обрезается до [-1, 1) и квантуется округлением"""
    if x.sample_rate is None:
        raise ParseError(path, "header", "cannot write a WAV file without a sample rate")
    values = x.real
    clipped = np.clip(values, -1.0, 1.0 - 1.0 / FULL_SCALE)
    if np.any(clipped != values):
        logger.warning(f"{path}: {int(np.sum(clipped != values))} samples clipped to [-1, 1)")
    pcm = np.rint(clipped * FULL_SCALE).astype("<i2")
    rate = int(round(x.sample_rate))
    payload = pcm.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, PCM_FORMAT, 1, rate, rate * 2, 2, 16,
        b"data", len(payload),
    )
    return header + payload


# --- CSV ---

def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_csv_signal(path: PathLike, fs: Optional[float] = None) -> Signal:
    with open(path, newline="", encoding="utf-8-sig") as handle:
        return parse_csv_signal(handle.read(), fs, str(path))


def parse_csv_signal(text: str, fs: Optional[float] = None, source: str = "<upload>") -> Signal:
    """Одно значение в строке или пара re,im; первая нечисловая строка считается заголовком"""
    rows = list(csv.reader(io.StringIO(text.removeprefix("\ufeff"), newline="")))
    values = []
    columns = None
    for line_no, row in enumerate(rows, start=1):
        cells = [cell.strip() for cell in row]
        if not any(cells):
            continue
        if line_no == 1 and not _is_number(cells[0]):
            continue
        if columns is None:
            columns = len(cells)
            if columns not in (1, 2):
                raise ParseError(source, f"line {line_no}", f"expected 1 or 2 columns, found {columns}")
        if len(cells) != columns:
            raise ParseError(source, f"line {line_no}", f"expected {columns} column(s), found {len(cells)}")
        try:
            numbers = [float(cell) for cell in cells]
        except ValueError as exc:
            raise ParseError(source, f"line {line_no}", f"not a number: {exc}") from exc
        values.append(complex(*numbers))
    if not values:
        raise ParseError(source, "line 1", "no samples found")
    return Signal(samples=values, sample_rate=fs)


def write_csv_signal(path: PathLike, x: Signal) -> None:
    """17 значащих цифр; комплексный сигнал пишется в два столбца"""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if not np.any(x.samples.imag):
            writer.writerows([f"{v:.17g}"] for v in x.samples.real)
        else:
            writer.writerows([f"{v.real:.17g}", f"{v.imag:.17g}"] for v in x.samples)


def write_series(path: PathLike, series: Dict[str, Sequence]) -> None:
    """Столбцы одинаковой длины; комплексные серии раскладываются на _re и _im"""
    columns: Dict[str, np.ndarray] = {}
    for name, values in series.items():
        arr = np.asarray(values)
        if np.iscomplexobj(arr):
            columns[f"{name}_re"] = arr.real
            columns[f"{name}_im"] = arr.imag
        else:
            columns[name] = arr.astype(float)
    lengths = {arr.size for arr in columns.values()}
    if len(lengths) > 1:
        raise ValueError(f"series lengths differ: {sorted(lengths)}")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in zip(*columns.values()):
            writer.writerow(f"{v:.17g}" for v in row)


def write_matrix(path: PathLike, matrix, row_axis: Sequence[float], col_axis: Sequence[float],
                 corner: str = "time") -> None:
    """Строка на кадр; заголовок - значения второй оси"""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (len(row_axis), len(col_axis)):
        raise ValueError(f"matrix shape {matrix.shape} does not match axes ({len(row_axis)}, {len(col_axis)})")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([corner] + [f"{v:.17g}" for v in col_axis])
        for label, row in zip(row_axis, matrix):
            writer.writerow([f"{label:.17g}"] + [f"{v:.17g}" for v in row])


# --- клипы и признаки ---

def read_manifest(path: PathLike) -> ClipSet:
    """Манифест id,path,label,fs; пути к клипам относительно манифеста"""
    source = str(path)
    base = Path(path).parent
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or tuple(reader.fieldnames[:4]) != MANIFEST_FIELDS:
            raise ParseError(source, "line 1", f"expected header {','.join(MANIFEST_FIELDS)}")
        clips = []
        for line_no, row in enumerate(reader, start=2):
            try:
                label = ClipLabel(row["label"].strip().lower())
                fs = float(row["fs"])
            except (ValueError, AttributeError) as exc:
                raise ParseError(source, f"line {line_no}", f"invalid label or fs: {exc}") from exc
            signal = read_csv_signal(base / row["path"], fs)
            if not signal.is_real:
                raise ParseError(str(base / row["path"]), "line 1", "clip samples must be real")
            clips.append(Clip(id=row["id"], samples=signal.real, fs=fs, label=label))
    logger.info(f"Loaded {len(clips)} clips from {path}")
    return ClipSet(clips=tuple(clips))


def write_clipset(directory: PathLike, cs: ClipSet) -> Path:
    """Один CSV на клип и manifest.csv; возвращает путь к манифесту"""
    directory = Path(directory)
    clip_dir = directory / "clips"
    clip_dir.mkdir(parents=True, exist_ok=True)
    manifest = directory / "manifest.csv"
    with open(manifest, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(MANIFEST_FIELDS)
        for clip in cs.clips:
            relative = Path("clips") / f"{clip.id}.csv"
            write_csv_signal(directory / relative, clip.signal())
            writer.writerow([clip.id, relative.as_posix(), clip.label.value, f"{clip.fs:g}"])
    return manifest


def write_feature_table(path: PathLike, t: FeatureTable) -> Tuple[Path, Path]:
    """CSV с признаками и JSON-файл метаданных рядом"""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id", "label", *t.feature_names])
        for clip_id, row in t.rows.items():
            writer.writerow([clip_id, t.labels[clip_id].value, *(f"{row[name]:.17g}" for name in t.feature_names)])
    meta = path.with_suffix(".meta.json")
    meta.write_text(json.dumps(t.metadata, indent=2, sort_keys=True), encoding="utf-8")
    return path, meta


def write_separability(path: PathLike, report: SeparabilityReport) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["feature", "auc", "ictal_mean", "interictal_mean", "n_ictal", "n_interictal"])
        for score in report.scores:
            writer.writerow([
                score.feature,
                "" if score.auc is None else f"{score.auc:.6f}",
                "" if score.ictal_mean is None else f"{score.ictal_mean:.17g}",
                "" if score.interictal_mean is None else f"{score.interictal_mean:.17g}",
                score.n_ictal,
                score.n_interictal,
            ])
