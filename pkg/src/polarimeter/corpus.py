"""Member roster and tweet corpus ingestion.

Both inputs are UTF-8 comma-delimited files with a header row::

    members.csv   name,handle,party,govtrack_score
    tweets.csv    handle,date,text,retweets,likes

A leading byte-order mark is tolerated. Handles are matched
case-insensitively with any leading ``@`` removed.
"""
from __future__ import annotations

import csv
import datetime as dt
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .exceptions import InputError

MEMBER_COLUMNS = ("name", "handle", "party", "govtrack_score")
TWEET_COLUMNS = ("handle", "date", "text", "retweets", "likes")
PARTIES = ("Democrat", "Republican", "Independent")
DEFAULT_WINDOW = (dt.date(2021, 1, 1), dt.date(2022, 12, 31))


def normalize_handle(handle: str) -> str:
    return handle.strip().lstrip("@").lower()


@dataclass(frozen=True)
class MemberRecord:
    name: str
    handle: str
    party: str
    ideology_score: float

    def __post_init__(self):
        if not normalize_handle(self.handle):
            raise ValueError("handle must be non-empty")
        if self.party not in PARTIES:
            raise ValueError(f"unknown party {self.party!r}")
        if not 0.0 <= self.ideology_score <= 1.0:
            raise ValueError(f"score out of range: {self.ideology_score}")

    @property
    def key(self) -> str:
        return normalize_handle(self.handle)


@dataclass(frozen=True)
class TweetRecord:
    handle: str
    timestamp: dt.date
    text: str
    retweets: int = 0
    likes: int = 0
    # position of the row in the source file; stable across filtering
    tweet_id: int = -1

    def __post_init__(self):
        if self.retweets < 0 or self.likes < 0:
            raise ValueError("engagement counts must be non-negative")


@dataclass(frozen=True)
class Corpus:
    members: tuple[MemberRecord, ...]
    tweets: tuple[TweetRecord, ...]
    author_index: dict[str, MemberRecord] = field(compare=False, repr=False)
    dropped_unknown_author: int = 0
    dropped_out_of_window: int = 0

    @property
    def input_count(self) -> int:
        return len(self.tweets) + self.dropped_unknown_author + self.dropped_out_of_window

    def author(self, tweet: TweetRecord) -> MemberRecord:
        return self.author_index[normalize_handle(tweet.handle)]


def _open_text(path) -> str:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    # utf-8-sig strips a BOM when present
    return path.read_text(encoding="utf-8-sig")


def _reader(text: str, expected: Sequence[str], path) -> Iterable[tuple[int, list[str]]]:
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise InputError(f"{path}: empty file, expected header {','.join(expected)}")
    except csv.Error as exc:
        raise InputError(f"{path}: unparseable header ({exc})")
    header = [h.strip() for h in header]
    if header != list(expected):
        raise InputError(f"{path}: expected header {','.join(expected)}, got {','.join(header)}")
    # row numbers are 1-based data rows, header excluded
    row_no = 0
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise InputError(f"{path}: malformed quoting at row {row_no + 1}: {exc}")
        if not row:
            continue
        row_no += 1
        yield row_no, row


def load_members(path) -> list[MemberRecord]:
    """Read a roster file, preserving row order.

    Raises
    ------
    InputError
        On a missing file, a row with the wrong column count, or an
        ideology score that is non-numeric or outside ``[0, 1]``. The
        message names the offending row.
    """
    text = _open_text(path)
    members = []
    for row_no, row in _reader(text, MEMBER_COLUMNS, path):
        if len(row) != len(MEMBER_COLUMNS):
            raise InputError(f"{path}: expected {len(MEMBER_COLUMNS)} columns at row {row_no}, got {len(row)}")
        name, handle, party, score = (c.strip() for c in row)
        try:
            value = float(score)
        except ValueError:
            raise InputError(f"{path}: non-numeric score {score!r} at row {row_no}")
        if not 0.0 <= value <= 1.0:
            raise InputError(f"{path}: score out of range at row {row_no}: {score}")
        if party not in PARTIES:
            raise InputError(f"{path}: unknown party {party!r} at row {row_no}")
        if not normalize_handle(handle):
            raise InputError(f"{path}: empty handle at row {row_no}")
        members.append(MemberRecord(name, handle, party, value))
    return members


def _count(value: str, column: str, row_no: int, path) -> int:
    value = value.strip()
    if value == "":
        return 0
    try:
        n = int(value)
    except ValueError:
        raise InputError(f"{path}: non-integer {column} {value!r} at row {row_no}")
    if n < 0:
        raise InputError(f"{path}: negative {column} at row {row_no}")
    return n


def load_tweets(path) -> list[TweetRecord]:
    """Read a tweet file; quoted fields may hold commas, quotes and newlines."""
    text = _open_text(path)
    tweets = []
    for index, (row_no, row) in enumerate(_reader(text, TWEET_COLUMNS, path)):
        if len(row) != len(TWEET_COLUMNS):
            raise InputError(f"{path}: expected {len(TWEET_COLUMNS)} columns at row {row_no}, got {len(row)}")
        handle, date, body, retweets, likes = row
        try:
            stamp = dt.date.fromisoformat(date.strip())
        except ValueError:
            raise InputError(f"{path}: unparseable date {date!r} at row {row_no}")
        tweets.append(TweetRecord(
            handle=handle.strip(),
            timestamp=stamp,
            text=body,
            retweets=_count(retweets, "retweets", row_no, path),
            likes=_count(likes, "likes", row_no, path),
            tweet_id=index,
        ))
    return tweets


def join(members: Sequence[MemberRecord], tweets: Sequence[TweetRecord],
         window: tuple[dt.date, dt.date] | None = None) -> Corpus:
    """Attach tweets to roster members, dropping (and counting) the rest.

    ``window`` is an inclusive ``(start, end)`` date range; ``None``
    disables date filtering. Unknown-author drops are counted before the
    window filter is applied.
    """
    index: dict[str, MemberRecord] = {}
    for m in members:
        if m.key in index:
            raise InputError(f"duplicate handle {m.handle!r}")
        index[m.key] = m
    kept = []
    unknown = out_of_window = 0
    for t in tweets:
        if normalize_handle(t.handle) not in index:
            unknown += 1
        elif window is not None and not window[0] <= t.timestamp <= window[1]:
            out_of_window += 1
        else:
            kept.append(t)
    return Corpus(tuple(members), tuple(kept), index, unknown, out_of_window)


def write_members(members: Iterable[MemberRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MEMBER_COLUMNS)
        for m in members:
            w.writerow([m.name, m.handle, m.party, repr(m.ideology_score)])


def write_tweets(tweets: Iterable[TweetRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TWEET_COLUMNS)
        for t in tweets:
            w.writerow([t.handle, t.timestamp.isoformat(), t.text, t.retweets, t.likes])
