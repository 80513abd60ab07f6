"""Corpus selection and retrieval.

A manifest CSV names candidate token contracts; the prominent ERC-20 subset
(market cap strictly above the cutoff) is fetched from an Etherscan-style
``getsourcecode`` endpoint and cached on disk. Every address gets at most
two cache files, `<address>.sol` and `<address>.meta.json`, both lowercased;
the meta file is written last and is the commit point, so a crash can leave
a stray .sol but never a meta that lies. Cached addresses are never
refetched, which makes a second run over the same manifest free of network
traffic. An offline mode turns cache misses into failures instead of
requests.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
import threading
import time
import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from enum import Enum
from pathlib import Path

import requests

from .errors import (
    ApiError,
    EmptyManifest,
    ManifestRowWarning,
    MissingFile,
    MissingHeader,
    NetworkError,
    RateLimited,
    SolmetricsError,
)

MANIFEST_HEADER = ["address", "symbol", "name", "market_cap_usd", "is_erc20"]
DEFAULT_BASE_URL = "https://api.etherscan.io/api"
DEFAULT_MIN_CAP_USD = Decimal(5000)

_ADDRESS_RE = re.compile(r"^0x[0-9a-fA-F]{40}$")
_TRUE_WORDS = frozenset({"true", "1", "yes"})
_FALSE_WORDS = frozenset({"false", "0", "no"})


@dataclass(frozen=True)
class ManifestEntry:
    address: str
    symbol: str
    name: str
    market_cap_usd: Decimal
    is_erc20: bool


class FetchStatus(Enum):
    VERIFIED = "Verified"
    NOT_VERIFIED = "NotVerified"
    FETCH_ERROR = "FetchError"


@dataclass(frozen=True)
class FetchResult:
    address: str
    status: FetchStatus
    source_path: str | None
    fetched_at: str  # ISO 8601 UTC


@dataclass(frozen=True)
class IngestConfig:
    cache_dir: str
    base_url: str = DEFAULT_BASE_URL
    api_key: str | None = None
    rate_limit: float = 5.0  # requests per second, shared across workers
    max_retries: int = 3
    backoff_base: float = 0.5  # seconds, doubled per retry
    max_in_flight: int = 4
    timeout: float = 10.0
    offline: bool = False
    min_cap_usd: Decimal = DEFAULT_MIN_CAP_USD
    provenance: str | None = None  # manifest snapshot note, echoed in reports


@dataclass(frozen=True)
class IngestReport:
    selected: int
    fetched: int
    not_verified: int
    failed: int
    results: tuple[FetchResult, ...] = ()
    provenance: str | None = None


class RateLimiter:
    """Shared gate that spaces request starts at least 1/rate seconds apart.

    Slots are reserved under a lock and slept out afterwards, so concurrent
    threads queue onto consecutive slots and any one-second window sees at
    most ``rate`` starts.
    """

    def __init__(self, rate: float) -> None:
        if rate <= 0:
            raise ValueError("rate must be positive")
        self._interval = 1.0 / rate
        self._lock = threading.Lock()
        self._next_free = 0.0

    def acquire(self) -> None:
        with self._lock:
            now = time.monotonic()
            slot = max(now, self._next_free)
            self._next_free = slot + self._interval
        delay = slot - now
        if delay > 0:
            time.sleep(delay)


def _parse_row(row: list[str]) -> ManifestEntry:
    if len(row) != len(MANIFEST_HEADER):
        raise ValueError(f"expected {len(MANIFEST_HEADER)} fields, got {len(row)}")
    address, symbol, name, cap_text, flag_text = (field.strip() for field in row)
    if not _ADDRESS_RE.match(address):
        raise ValueError(f"bad address {address!r}")
    try:
        cap = Decimal(cap_text)
    except InvalidOperation:
        raise ValueError(f"bad market cap {cap_text!r}") from None
    if not cap.is_finite() or cap < 0:
        raise ValueError(f"bad market cap {cap_text!r}")
    flag = flag_text.lower()
    if flag in _TRUE_WORDS:
        is_erc20 = True
    elif flag in _FALSE_WORDS:
        is_erc20 = False
    else:
        raise ValueError(f"bad is_erc20 value {flag_text!r}")
    return ManifestEntry(address, symbol, name, cap, is_erc20)


def load_manifest(path: str) -> list[ManifestEntry]:
    """Parse the manifest CSV, skipping malformed rows with a warning.

    The header must read exactly `address,symbol,name,market_cap_usd,
    is_erc20`. A file yielding zero usable rows raises EmptyManifest.
    """
    try:
        handle = open(path, newline="", encoding="utf-8-sig")
    except FileNotFoundError:
        raise MissingFile(f"manifest not found: {path}") from None
    entries: list[ManifestEntry] = []
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != MANIFEST_HEADER:
            raise MissingHeader(
                f"{path}: first row must be {','.join(MANIFEST_HEADER)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not field.strip() for field in row):
                continue
            try:
                entries.append(_parse_row(row))
            except ValueError as exc:
                warnings.warn(
                    f"{path}:{lineno}: skipping row ({exc})",
                    ManifestRowWarning,
                    stacklevel=2,
                )
    if not entries:
        raise EmptyManifest(f"{path}: no usable data rows")
    return entries


def filter_prominent(
    entries: list[ManifestEntry],
    min_cap_usd: Decimal = DEFAULT_MIN_CAP_USD,
) -> list[ManifestEntry]:
    """ERC-20 entries with market cap strictly greater than the cutoff."""
    return [
        e for e in entries
        if e.is_erc20 and e.market_cap_usd > min_cap_usd
    ]


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _flatten_sources(raw: str) -> str:
    """Collapse a multi-file JSON payload into one unit, or pass text through.

    Verified uploads of multi-file projects arrive as JSON in the SourceCode
    field, sometimes wrapped in doubled braces. Constituent file contents
    are concatenated in sorted path order so the result is deterministic.
    """
    text = raw.strip()
    if not text.startswith("{"):
        return raw
    candidate = text
    if candidate.startswith("{{") and candidate.endswith("}}"):
        candidate = candidate[1:-1]
    try:
        data = json.loads(candidate)
    except json.JSONDecodeError:
        return raw
    if not isinstance(data, dict):
        return raw
    sources = data.get("sources")
    if not isinstance(sources, dict):
        sources = data
    parts: list[str] = []
    for key in sorted(sources):
        item = sources[key]
        if isinstance(item, dict) and isinstance(item.get("content"), str):
            parts.append(item["content"])
    if not parts:
        return raw
    return "".join(p if p.endswith("\n") else p + "\n" for p in parts)


def _replace_write(target: Path, text: str) -> None:
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(target)


def _write_meta(
    meta_path: Path,
    address: str,
    status: FetchStatus,
    fetched_at: str,
    sha256: str | None,
) -> None:
    body = json.dumps(
        {
            "address": address.lower(),
            "status": status.value,
            "fetched_at": fetched_at,
            "sha256": sha256,
        },
        indent=2,
        sort_keys=True,
    )
    _replace_write(meta_path, body + "\n")


def _read_cached(meta_path: Path, sol_path: Path, address: str) -> FetchResult | None:
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        status = FetchStatus(meta["status"])
        fetched_at = meta["fetched_at"]
    except (OSError, ValueError, KeyError):
        return None  # absent or corrupt meta: treat as a miss
    if status is FetchStatus.VERIFIED:
        try:
            if sol_path.stat().st_size == 0:
                return None
        except OSError:
            return None
        return FetchResult(address, status, str(sol_path), fetched_at)
    return FetchResult(address, status, None, fetched_at)


def _request_payload(address: str, config: IngestConfig, limiter: RateLimiter) -> dict:
    params = {
        "module": "contract",
        "action": "getsourcecode",
        "address": address,
    }
    if config.api_key:
        params["apikey"] = config.api_key

    last_error: SolmetricsError = NetworkError(f"{address}: no attempt made")
    delay = config.backoff_base
    for attempt in range(config.max_retries + 1):
        if attempt:
            time.sleep(delay)
            delay *= 2
        limiter.acquire()
        try:
            resp = requests.get(config.base_url, params=params, timeout=config.timeout)
        except requests.RequestException as exc:
            last_error = NetworkError(f"{address}: {exc}")
            continue
        if resp.status_code == 429:
            last_error = RateLimited(f"{address}: HTTP 429 from API")
            continue
        if resp.status_code >= 500:
            last_error = NetworkError(f"{address}: HTTP {resp.status_code}")
            continue
        if resp.status_code != 200:
            raise NetworkError(f"{address}: HTTP {resp.status_code}")
        try:
            payload = resp.json()
        except ValueError:
            raise ApiError(f"{address}: response body is not JSON") from None
        if not isinstance(payload, dict) or payload.get("status") != "1":
            message = ""
            if isinstance(payload, dict):
                message = str(payload.get("message", ""))
            raise ApiError(f"{address}: API reported failure ({message or 'no message'})")
        result = payload.get("result")
        if not isinstance(result, list) or not result or not isinstance(result[0], dict):
            raise ApiError(f"{address}: malformed result payload")
        return result[0]
    raise last_error


def fetch_source(
    entry: ManifestEntry,
    config: IngestConfig,
    *,
    limiter: RateLimiter | None = None,
) -> FetchResult:
    """Return the cached or freshly fetched source for one address.

    Raises RateLimited, NetworkError or ApiError; an empty SourceCode field
    is not an error but a NotVerified result, cached so it is not asked for
    again.
    """
    cache = Path(config.cache_dir)
    addr = entry.address.lower()
    sol_path = cache / f"{addr}.sol"
    meta_path = cache / f"{addr}.meta.json"

    cached = _read_cached(meta_path, sol_path, entry.address)
    if cached is not None:
        return cached
    if config.offline:
        raise NetworkError(f"{entry.address}: not in cache and offline mode is set")

    if limiter is None:
        limiter = RateLimiter(config.rate_limit)
    record = _request_payload(entry.address, config, limiter)
    raw = record.get("SourceCode") or ""
    fetched_at = _utc_now()
    cache.mkdir(parents=True, exist_ok=True)

    if not raw:
        _write_meta(meta_path, entry.address, FetchStatus.NOT_VERIFIED, fetched_at, None)
        return FetchResult(entry.address, FetchStatus.NOT_VERIFIED, None, fetched_at)

    text = _flatten_sources(raw)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    _replace_write(sol_path, text)  # .sol first, meta commits the entry
    _write_meta(meta_path, entry.address, FetchStatus.VERIFIED, fetched_at, digest)
    return FetchResult(entry.address, FetchStatus.VERIFIED, str(sol_path), fetched_at)


def _fetch_guarded(
    entry: ManifestEntry,
    config: IngestConfig,
    limiter: RateLimiter,
) -> FetchResult:
    try:
        return fetch_source(entry, config, limiter=limiter)
    except SolmetricsError:
        return FetchResult(entry.address, FetchStatus.FETCH_ERROR, None, _utc_now())


def ingest_corpus(manifest_path: str, config: IngestConfig) -> IngestReport:
    """Select prominent ERC-20 entries and fetch them all.

    Per-address failures become FetchError results rather than aborting the
    run; the count identity fetched + not_verified + failed == selected
    always holds. An empty post-filter selection returns a zero report
    without touching the network.
    """
    entries = load_manifest(manifest_path)
    chosen = filter_prominent(entries, config.min_cap_usd)
    if not chosen:
        return IngestReport(0, 0, 0, 0, provenance=config.provenance)

    Path(config.cache_dir).mkdir(parents=True, exist_ok=True)
    limiter = RateLimiter(config.rate_limit)
    by_address: dict[str, FetchResult] = {}
    workers = max(1, config.max_in_flight)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(_fetch_guarded, entry, config, limiter): entry
            for entry in chosen
        }
        for future in as_completed(futures):
            result = future.result()
            by_address[result.address] = result

    results = tuple(by_address[entry.address] for entry in chosen)
    counts = {status: 0 for status in FetchStatus}
    for result in results:
        counts[result.status] += 1
    return IngestReport(
        selected=len(chosen),
        fetched=counts[FetchStatus.VERIFIED],
        not_verified=counts[FetchStatus.NOT_VERIFIED],
        failed=counts[FetchStatus.FETCH_ERROR],
        results=results,
        provenance=config.provenance,
    )
