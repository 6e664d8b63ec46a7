"""Live ngram transport: request shape, rate limiting, retry with backoff.

All tests use a stub session; nothing touches the network.
"""

import pytest
import requests

from maskbias.frequency import HttpNgramTransport, NgramTransportError


class FakeResponse:
    def __init__(self, payload=None, fail=False):
        self.payload = payload if payload is not None else []
        self.fail = fail

    def raise_for_status(self):
        if self.fail:
            raise requests.HTTPError("boom")

    def json(self):
        return self.payload


class FakeSession:
    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.calls = []

    def get(self, url, params=None, timeout=None):
        self.calls.append((url, dict(params)))
        outcome = self.outcomes.pop(0)
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


@pytest.fixture(autouse=True)
def _no_sleep(monkeypatch):
    naps = []
    monkeypatch.setattr("time.sleep", lambda s: naps.append(s))
    return naps


def make_transport(outcomes, **kwargs):
    session = FakeSession(outcomes)
    transport = HttpNgramTransport(session=session, **kwargs)
    return transport, session


def test_request_parameters():
    payload = [{"ngram": "nurse", "timeseries": [0.0]}]
    transport, session = make_transport([FakeResponse(payload)], corpus="en-2019")
    assert transport.get("nurse", case_insensitive=False) == payload
    url, params = session.calls[0]
    assert url.endswith("/ngrams/json")
    assert params["content"] == "nurse"
    assert params["year_start"] == "1700"
    assert params["year_end"] == "2000"
    assert params["smoothing"] == "0"
    assert params["corpus"] == "en-2019"
    assert "case_insensitive" not in params


def test_case_insensitive_flag_set():
    transport, session = make_transport([FakeResponse([])])
    transport.get("nurse", case_insensitive=True)
    assert session.calls[0][1]["case_insensitive"] == "true"


def test_retries_with_backoff_then_succeeds(_no_sleep):
    transport, session = make_transport(
        [
            requests.ConnectionError("down"),
            FakeResponse(fail=True),
            FakeResponse([{"ngram": "nurse", "timeseries": []}]),
        ],
        max_retries=3,
        requests_per_minute=100000,  # keep rate-limit waits out of the way
    )
    assert transport.get("nurse", False) == [{"ngram": "nurse", "timeseries": []}]
    assert len(session.calls) == 3
    backoffs = [s for s in _no_sleep if s >= 1.0]
    assert backoffs == [1.0, 2.0]  # doubling delays between attempts


def test_gives_up_after_max_retries():
    transport, session = make_transport(
        [requests.ConnectionError("down")] * 3, max_retries=2
    )
    with pytest.raises(NgramTransportError, match="after 3 attempts"):
        transport.get("nurse", False)
    assert len(session.calls) == 3


def test_rate_limit_spacing(monkeypatch, _no_sleep):
    clock = [0.0]
    monkeypatch.setattr("time.monotonic", lambda: clock[0])
    transport, session = make_transport(
        [FakeResponse([]), FakeResponse([])], requests_per_minute=60
    )
    transport.get("a", False)
    # second call lands immediately after the first: must wait out the interval
    transport.get("b", False)
    waits = [s for s in _no_sleep if 0 < s <= 1.0]
    assert waits, "second request was not rate limited"
