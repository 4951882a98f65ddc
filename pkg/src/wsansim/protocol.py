"""Wire packets of the case study and their binary codecs.

Two fixed-layout frames, little-endian throughout:

  beacon        [0x01][xc f64][yc f64][chno u16]            19 octets
  cluster head  [0x02][xc f64][yc f64][qno u16][aa u16]     21 octets

Codecs check layout only; semantic range checks (valid quadrant,
deployed actor address) belong to node logic.
"""

import math
import struct
from dataclasses import dataclass

BEACON_TAG = 0x01
CLUSTER_HEAD_TAG = 0x02

_BEACON_STRUCT = struct.Struct("<BddH")
_CLUSTER_HEAD_STRUCT = struct.Struct("<BddHH")

BEACON_FRAME_LEN = _BEACON_STRUCT.size  # 19
CLUSTER_HEAD_FRAME_LEN = _CLUSTER_HEAD_STRUCT.size  # 21


class CodecError(ValueError):
    """Base for packet encoding/decoding failures."""


class EncodeError(CodecError):
    """Packet fields do not fit the frame layout."""


class FrameTagError(CodecError):
    """Frame kind tag does not match the expected packet kind."""


class FrameLengthError(CodecError):
    """Frame is not the fixed length of its kind."""


class FrameCorruptError(CodecError):
    """Decoded field is not a valid value (non-finite coordinate)."""


@dataclass(frozen=True)
class BeaconNodePacket:
    """Sensor report: own coordinates plus the target cluster head number."""

    xc: float
    yc: float
    chno: int


@dataclass(frozen=True)
class ClusterHeadNodePacket:
    """Actor command: target coordinates, quadrant number, actor address."""

    xc: float
    yc: float
    qno: int
    aa: int


def _check_coord(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise EncodeError(f"{name} must be finite, got {value!r}")
    return value


def _check_u16(name: str, value: int) -> int:
    if not (0 <= value <= 0xFFFF):
        raise EncodeError(f"{name} must fit an unsigned 16-bit field, got {value}")
    return value


def encode_beacon(p: BeaconNodePacket) -> bytes:
    return _BEACON_STRUCT.pack(
        BEACON_TAG,
        _check_coord("xc", p.xc),
        _check_coord("yc", p.yc),
        _check_u16("chno", p.chno),
    )


def decode_beacon(frame: bytes) -> BeaconNodePacket:
    _check_frame(frame, BEACON_TAG, BEACON_FRAME_LEN, "beacon")
    _, xc, yc, chno = _BEACON_STRUCT.unpack(frame)
    _check_decoded_coords(xc, yc)
    return BeaconNodePacket(xc=xc, yc=yc, chno=chno)


def encode_cluster_head(p: ClusterHeadNodePacket) -> bytes:
    return _CLUSTER_HEAD_STRUCT.pack(
        CLUSTER_HEAD_TAG,
        _check_coord("xc", p.xc),
        _check_coord("yc", p.yc),
        _check_u16("qno", p.qno),
        _check_u16("aa", p.aa),
    )


def decode_cluster_head(frame: bytes) -> ClusterHeadNodePacket:
    _check_frame(frame, CLUSTER_HEAD_TAG, CLUSTER_HEAD_FRAME_LEN, "cluster head")
    _, xc, yc, qno, aa = _CLUSTER_HEAD_STRUCT.unpack(frame)
    _check_decoded_coords(xc, yc)
    return ClusterHeadNodePacket(xc=xc, yc=yc, qno=qno, aa=aa)


def _check_frame(frame: bytes, tag: int, length: int, kind: str) -> None:
    if len(frame) == 0:
        raise FrameLengthError(f"empty frame cannot be a {kind} packet")
    if frame[0] != tag:
        raise FrameTagError(
            f"expected {kind} tag 0x{tag:02x}, got 0x{frame[0]:02x}"
        )
    if len(frame) != length:
        raise FrameLengthError(
            f"{kind} frame must be {length} octets, got {len(frame)}"
        )


def _check_decoded_coords(xc: float, yc: float) -> None:
    if not (math.isfinite(xc) and math.isfinite(yc)):
        raise FrameCorruptError(f"decoded non-finite coordinate ({xc!r}, {yc!r})")
