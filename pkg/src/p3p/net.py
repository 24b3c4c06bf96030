"""Run the homomorphic three-pass protocol between two endpoints.

The runner speaks whole wire frames over a minimal channel interface, so
the same code drives a TCP socket or an in-process queue pair (tests use
the latter; the bytes on either transport are identical under the same
randomness). Each outcome records the raw frames in conversation order
for transcript comparison.

A malformed or unexpected frame makes the runner send a best-effort ERROR
frame, close, and raise ProtocolError; a silent peer raises
ProtocolTimeout after the channel's timeout.
"""

import queue
import socket
import threading
from dataclasses import dataclass
from typing import Callable

from . import numtheory as nt
from .errors import (
    MalformedMessage,
    ParseError,
    ProtocolError,
    ProtocolTimeout,
    RangeError,
)
from .paillier import PublicKey
from .threepass import PaillierInitiatorSession, PaillierResponderSession
from .wire import (
    HEADER_LEN,
    MAX_PAYLOAD,
    MsgType,
    WireMessage,
    decode_msg,
    encode_msg,
    error_message,
    key_announce,
    parse_key_announce,
    pass_message,
)

DEFAULT_TIMEOUT = 30.0


class SocketChannel:
    """Frame transport over a connected TCP socket."""

    def __init__(self, sock: socket.socket, timeout: float = DEFAULT_TIMEOUT):
        self._sock = sock
        sock.settimeout(timeout)

    def send(self, frame: bytes) -> None:
        try:
            self._sock.sendall(frame)
        except OSError as exc:
            raise ProtocolError(f"send failed: {exc}") from exc

    def recv(self) -> bytes:
        header = self._read_exact(HEADER_LEN)
        length = int.from_bytes(header[6:10], "big")
        if length > MAX_PAYLOAD:
            raise ProtocolError(f"peer announces oversized payload ({length} bytes)")
        return header + self._read_exact(length)

    def _read_exact(self, count: int) -> bytes:
        chunks = []
        remaining = count
        while remaining:
            try:
                chunk = self._sock.recv(remaining)
            except socket.timeout:
                raise ProtocolTimeout("peer sent nothing before the timeout") from None
            except OSError as exc:
                raise ProtocolError(f"receive failed: {exc}") from exc
            if not chunk:
                raise ProtocolError("connection closed mid-conversation")
            chunks.append(chunk)
            remaining -= len(chunk)
        return b"".join(chunks)

    def close(self) -> None:
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._sock.close()


class MemoryChannel:
    """In-process frame transport; created in connected pairs."""

    def __init__(self, inbox: queue.Queue, outbox: queue.Queue, timeout: float):
        self._inbox = inbox
        self._outbox = outbox
        self._timeout = timeout

    def send(self, frame: bytes) -> None:
        self._outbox.put(frame)

    def recv(self) -> bytes:
        try:
            frame = self._inbox.get(timeout=self._timeout)
        except queue.Empty:
            raise ProtocolTimeout("peer sent nothing before the timeout") from None
        if frame is None:
            raise ProtocolError("connection closed mid-conversation")
        return frame

    def close(self) -> None:
        self._outbox.put(None)


def memory_channel_pair(
    timeout: float = DEFAULT_TIMEOUT,
) -> tuple[MemoryChannel, MemoryChannel]:
    a_to_b: queue.Queue = queue.Queue()
    b_to_a: queue.Queue = queue.Queue()
    return (
        MemoryChannel(b_to_a, a_to_b, timeout),
        MemoryChannel(a_to_b, b_to_a, timeout),
    )


@dataclass(frozen=True)
class InitiatorOutcome:
    pass1: int
    pass2: int
    pass3: int
    frames: tuple[bytes, ...]  # every frame sent or received, in order


@dataclass(frozen=True)
class ResponderOutcome:
    recovered: int
    pass1: int
    pass2: int
    pass3: int
    frames: tuple[bytes, ...]


def _send(channel, frames: list, msg: WireMessage) -> None:
    frame = encode_msg(msg)
    channel.send(frame)
    frames.append(frame)


def _abort(channel, reason: str) -> ProtocolError:
    try:
        channel.send(encode_msg(error_message(reason)))
    except Exception:
        pass  # peer may already be gone; the local error is what matters
    channel.close()
    return ProtocolError(reason)


def _recv_expect(
    channel, frames: list, expected: MsgType, pk: PublicKey | None
) -> WireMessage:
    frame = channel.recv()
    frames.append(frame)
    try:
        msg = decode_msg(frame, pk)
    except (ParseError, RangeError) as exc:
        raise _abort(channel, f"bad frame: {exc}") from exc
    if msg.msg_type is MsgType.ERROR:
        channel.close()
        raise ProtocolError(f"peer reported: {msg.error_text}")
    if msg.msg_type is not expected:
        raise _abort(
            channel, f"expected {expected.name}, got {msg.msg_type.name}"
        )
    return msg


def run_initiator(
    channel,
    session: PaillierInitiatorSession,
    rng: nt.RandomSource | None = None,
) -> InitiatorOutcome:
    """Drive the sender side over an open channel."""
    pk = session.sk.public
    frames: list[bytes] = []
    _send(channel, frames, key_announce(pk.n, pk.g))
    pass1 = session.step1_send(rng)
    _send(channel, frames, pass_message(MsgType.PASS1, pass1))
    pass2 = _recv_expect(channel, frames, MsgType.PASS2, pk).value
    try:
        pass3 = session.step3_reveal(pass2)
    except MalformedMessage as exc:
        raise _abort(channel, str(exc)) from exc
    _send(channel, frames, pass_message(MsgType.PASS3, pass3))
    session.mark_done()
    channel.close()
    return InitiatorOutcome(
        pass1=pass1, pass2=pass2, pass3=pass3, frames=tuple(frames)
    )


def run_responder(
    channel,
    rng: nt.RandomSource | None = None,
    hardened: bool = True,
) -> ResponderOutcome:
    """Drive the receiver side; returns the recovered message."""
    frames: list[bytes] = []
    announce_frame = channel.recv()
    frames.append(announce_frame)
    try:
        announce = decode_msg(announce_frame)
        n, g = parse_key_announce(announce)
    except ParseError as exc:
        raise _abort(channel, f"bad key announce: {exc}") from exc
    if n < 2 or nt.gcd(g, n * n) != 1:
        raise _abort(channel, "announced key is unusable")
    pk = PublicKey(n=n, g=g)
    session = PaillierResponderSession(pk, hardened=hardened)
    pass1 = _recv_expect(channel, frames, MsgType.PASS1, pk).value
    try:
        pass2 = session.step2_respond(pass1, rng)
    except MalformedMessage as exc:
        raise _abort(channel, str(exc)) from exc
    _send(channel, frames, pass_message(MsgType.PASS2, pass2))
    pass3 = _recv_expect(channel, frames, MsgType.PASS3, pk).value
    try:
        recovered = session.step4_recover(pass3)
    except MalformedMessage as exc:
        raise _abort(channel, str(exc)) from exc
    channel.close()
    return ResponderOutcome(
        recovered=recovered,
        pass1=pass1,
        pass2=pass2,
        pass3=pass3,
        frames=tuple(frames),
    )


def send_over_tcp(
    host: str,
    port: int,
    session: PaillierInitiatorSession,
    rng: nt.RandomSource | None = None,
    timeout: float = DEFAULT_TIMEOUT,
) -> InitiatorOutcome:
    """Connect to a listening responder and run the initiator role."""
    try:
        sock = socket.create_connection((host, port), timeout=timeout)
    except socket.timeout:
        raise ProtocolTimeout(f"no connection to {host}:{port}") from None
    except OSError as exc:
        raise ProtocolError(f"connect to {host}:{port} failed: {exc}") from exc
    channel = SocketChannel(sock, timeout=timeout)
    try:
        return run_initiator(channel, session, rng)
    finally:
        channel.close()


def serve_three_pass(
    port: int = 0,
    host: str = "127.0.0.1",
    sessions: int = 1,
    parallel: bool = False,
    hardened: bool = True,
    timeout: float = DEFAULT_TIMEOUT,
    rng_factory: Callable[[int], nt.RandomSource | None] | None = None,
    on_listening: Callable[[int], None] | None = None,
    on_outcome: Callable[[ResponderOutcome], None] | None = None,
) -> list[ResponderOutcome]:
    """Accept ``sessions`` connections and run the responder on each.

    Sequential by default; with ``parallel`` each connection gets its own
    thread (sessions stay fully independent -- no state is shared).
    ``rng_factory`` maps the 0-based session index to a RandomSource, which
    keeps seeded runs deterministic per session.
    """
    outcomes: list[ResponderOutcome] = []
    failures: list[Exception] = []
    lock = threading.Lock()

    def handle(conn: socket.socket, index: int) -> None:
        channel = SocketChannel(conn, timeout=timeout)
        rng = rng_factory(index) if rng_factory else None
        try:
            outcome = run_responder(channel, rng=rng, hardened=hardened)
        except Exception as exc:
            with lock:
                failures.append(exc)
            return
        finally:
            channel.close()
        with lock:
            outcomes.append(outcome)
        if on_outcome:
            on_outcome(outcome)

    with socket.create_server((host, port)) as server:
        server.settimeout(timeout)
        if on_listening:
            on_listening(server.getsockname()[1])
        workers = []
        for index in range(sessions):
            try:
                conn, _ = server.accept()
            except socket.timeout:
                raise ProtocolTimeout("no connection before the timeout") from None
            if parallel:
                worker = threading.Thread(target=handle, args=(conn, index), daemon=True)
                worker.start()
                workers.append(worker)
            else:
                handle(conn, index)
                if failures:
                    raise failures[0]
        for worker in workers:
            worker.join()
    if failures:
        raise failures[0]
    return outcomes
