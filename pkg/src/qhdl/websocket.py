"""Server-side WebSocket (RFC 6455) primitives: handshake, frame codec.

Only what the debugger needs: unfragmented text frames, ping/pong, close.
"""

from __future__ import annotations

import base64
import hashlib
import struct

_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"

OP_TEXT = 0x1
OP_CLOSE = 0x8
OP_PING = 0x9
OP_PONG = 0xA


class ConnectionClosed(Exception):
    pass


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + _GUID).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def _read_exact(rfile, count: int) -> bytes:
    data = rfile.read(count)
    if data is None or len(data) < count:
        raise ConnectionClosed
    return data


def read_frame(rfile) -> tuple[int, bytes]:
    """One complete frame from a client; unmasks the payload."""
    head = _read_exact(rfile, 2)
    fin = head[0] & 0x80
    opcode = head[0] & 0x0F
    masked = head[1] & 0x80
    length = head[1] & 0x7F
    if not fin:
        raise ConnectionClosed  # fragmentation unsupported by this protocol
    if length == 126:
        (length,) = struct.unpack("!H", _read_exact(rfile, 2))
    elif length == 127:
        (length,) = struct.unpack("!Q", _read_exact(rfile, 8))
    if masked:
        key = _read_exact(rfile, 4)
        payload = bytes(
            b ^ key[i % 4] for i, b in enumerate(_read_exact(rfile, length))
        )
    else:
        payload = _read_exact(rfile, length)
    return opcode, payload


def write_frame(wfile, opcode: int, payload: bytes) -> None:
    """One unmasked (server to client) frame."""
    head = bytearray([0x80 | opcode])
    length = len(payload)
    if length < 126:
        head.append(length)
    elif length < 1 << 16:
        head.append(126)
        head += struct.pack("!H", length)
    else:
        head.append(127)
        head += struct.pack("!Q", length)
    wfile.write(bytes(head) + payload)
    wfile.flush()


def send_text(wfile, text: str) -> None:
    write_frame(wfile, OP_TEXT, text.encode("utf-8"))


def send_close(wfile, code: int = 1000, reason: str = "") -> None:
    write_frame(wfile, OP_CLOSE, struct.pack("!H", code) + reason.encode("utf-8"))
