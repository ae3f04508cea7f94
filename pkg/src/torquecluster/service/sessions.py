"""In-memory session store for the interactive explorer.

A session pins one immutable TorqueResult; the only mutable parts are the
removed-id set and its version counter, guarded per session so concurrent
cut requests serialize (last writer wins, versions strictly increase).
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from ..cuts import auto_cut
from ..model import Dataset, TorqueResult


@dataclass
class Session:
    id: str
    result: TorqueResult
    data: Dataset | None  # None when created from a precomputed matrix
    removed: set[int] = field(default_factory=set)
    version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def projection_available(self) -> bool:
        return self.data is not None


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, result: TorqueResult, data: Dataset | None) -> Session:
        session = Session(id=uuid.uuid4().hex, result=result, data=data,
                          removed=set(auto_cut(result.connections)))
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def list(self) -> list[Session]:
        with self._lock:
            return list(self._sessions.values())


def update_removed(session: Session, removed: set[int]) -> tuple[frozenset[int], int]:
    """Swap in a new removed set under the session lock.

    Returns the (removed set, version) snapshot so responses stay consistent
    even when another writer lands immediately afterwards.
    """
    for connection_id in removed:
        session.result.connection_by_id(connection_id)
    with session.lock:
        session.removed = set(removed)
        session.version += 1
        return frozenset(session.removed), session.version


def toggle_removed(session: Session, connection_id: int) -> tuple[frozenset[int], int, bool]:
    """Atomically flip one connection id; returns (removed, version, now_removed)."""
    session.result.connection_by_id(connection_id)
    with session.lock:
        if connection_id in session.removed:
            session.removed.discard(connection_id)
            now_removed = False
        else:
            session.removed.add(connection_id)
            now_removed = True
        session.version += 1
        return frozenset(session.removed), session.version, now_removed


def snapshot(session: Session) -> tuple[frozenset[int], int]:
    with session.lock:
        return frozenset(session.removed), session.version
