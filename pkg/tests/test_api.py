import numpy as np
import pytest
from fastapi.testclient import TestClient

from dspwb import __version__
from dspwb.main import app
from dspwb.schemas.signal import Signal
from dspwb.services import dft_properties, fileio


@pytest.fixture
def client():
    return TestClient(app)


def _wav_bytes(n=1000, fs=8000.0):
    t = np.arange(n)
    return fileio.encode_wav(Signal(samples=0.5 * np.sin(2 * np.pi * 200 * t / fs), sample_rate=fs))


def test_health_and_root(client):
    assert client.get("/health").json() == {"status": "ok"}
    root = client.get("/").json()
    assert root["service"] == "DSP Workbench"
    assert root["version"] == __version__


def test_compress_returns_cropped_wav(client):
    response = client.post(
        "/audio/compress",
        files={"file": ("tone.wav", _wav_bytes(), "audio/wav")},
        data={"p": "0.2"},
    )
    assert response.status_code == 200
    assert response.headers["content-type"] == "audio/wav"
    x = fileio.decode_wav(response.content)
    assert len(x) == 1000
    assert x.sample_rate == 8000.0


def test_compress_rejects_wrong_type(client):
    response = client.post("/audio/compress", files={"file": ("a.txt", b"hello", "text/plain")})
    assert response.status_code == 400


def test_compress_rejects_large_upload(client, monkeypatch):
    monkeypatch.setenv("MAX_UPLOAD_SIZE", "10")
    response = client.post("/audio/compress", files={"file": ("tone.wav", _wav_bytes(), "audio/wav")})
    assert response.status_code == 413


@pytest.mark.parametrize(
    "payload, p",
    [(b"RIFF\x00\x00\x00\x00WAVEjunk", "0.1"), (_wav_bytes(), "0")],
)
def test_compress_reports_bad_input(client, payload, p):
    response = client.post(
        "/audio/compress",
        files={"file": ("bad.wav", payload, "audio/wav")},
        data={"p": p},
    )
    assert response.status_code == 422
    assert response.json()["detail"]


def test_heartrate_estimates(client):
    n = np.arange(1024)
    text = "\n".join(f"{v:.17g}" for v in np.cos(2 * np.pi * 11 * n / 1024))
    response = client.post(
        "/biosignal/heartrate",
        files={"file": ("ppg.csv", text.encode(), "text/csv")},
        data={"fs": "100"},
    )
    assert response.status_code == 200
    body = response.json()
    assert [item["method"] for item in body] == ["fft_peak", "autocorr_zero_cross"]
    assert body[0]["bpm"] == pytest.approx(64.453125)
    assert abs(body[1]["bpm"] - 64.453125) < 2.0


def test_heartrate_rejects_flat_signal(client):
    response = client.post(
        "/biosignal/heartrate",
        files={"file": ("flat.csv", ("1\n" * 64).encode(), "text/csv")},
        data={"fs": "100"},
    )
    assert response.status_code == 422


def test_quiz_sheet_hides_answers(client):
    body = client.get("/quiz/sheet", params={"seed": 3}).json()
    assert len(body) == 15
    assert all("answer" not in item for item in body)
    assert all(len(item["given"]) == 6 for item in body)


def test_quiz_grading(client):
    item = dft_properties.generate_quiz(6, 15, 3)[4]
    answer = [[v.real, v.imag] for v in item.answer_seq]
    good = client.post("/quiz/grade", json={"seed": 3, "index": 4, "answer": answer})
    assert good.status_code == 200
    assert good.json()["correct"] is True

    answer[0][0] += 10.0
    bad = client.post("/quiz/grade", json={"seed": 3, "index": 4, "answer": answer})
    assert bad.json()["correct"] is False
    assert bad.json()["first_mismatch"] == 0


@pytest.mark.parametrize(
    "payload, status",
    [
        ({"index": 99, "answer": [[0, 0]]}, 404),
        ({"index": 0, "answer": [[0, 0, 0]]}, 422),
        ({"index": 0, "answer": [[0, 0]]}, 422),
    ],
)
def test_quiz_grading_errors(client, payload, status):
    assert client.post("/quiz/grade", json=payload).status_code == status
