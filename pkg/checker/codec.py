'''Fixed-width byte encoding of states, used as visited-set keys'''
import struct
from typing import Final, Union

from models.automata import SystemDef
from models.constants import ENGINE_CONSTANTS, STRUCT_WIDTH_CODES
from models.errors import InternalCheckerError, StateDecodeError

from checker.compiled import CompiledSystem
from checker.semantics import SystemState, as_compiled

__all__ = ('StateCodec', 'encode', 'decode')

def _width_code(span: int) -> str:
    assert ENGINE_CONSTANTS
    for width in sorted(ENGINE_CONSTANTS.encoding.slot_widths):
        if span < 256 ** width:
            return STRUCT_WIDTH_CODES[width]
    raise InternalCheckerError(f'Slot span {span} exceeds every configured encoding width')

class StateCodec:
    '''Packs location indices and offset slot values (value - lo) little-endian, one field per slot'''
    __slots__ = ('compiled', '_struct', '_lows', '_highs', '_location_counts', '_process_count')

    def __init__(self, compiled: CompiledSystem):
        self.compiled: Final[CompiledSystem] = compiled
        self._location_counts: Final[tuple[int, ...]] = tuple(len(names) for names in compiled.location_names)
        self._lows: Final[tuple[int, ...]] = tuple(slot.lo for slot in compiled.slots)
        self._highs: Final[tuple[int, ...]] = tuple(slot.hi for slot in compiled.slots)
        self._process_count: Final[int] = len(self._location_counts)
        layout: str = '<' + ''.join(_width_code(count - 1) for count in self._location_counts) \
                          + ''.join(_width_code(slot.hi - slot.lo) for slot in compiled.slots)
        self._struct: Final[struct.Struct] = struct.Struct(layout)

    @property
    def width(self) -> int:
        return self._struct.size

    def encode(self, state: SystemState) -> bytes:
        try:
            return self._struct.pack(*state.locations, *(value - lo for value, lo in zip(state.values, self._lows)))
        except struct.error as pack_error:
            raise InternalCheckerError(f'State outside declared ranges cannot be encoded: {pack_error}')

    def decode(self, key: bytes) -> SystemState:
        try:
            fields: tuple[int, ...] = self._struct.unpack(key)
        except (struct.error, TypeError) as unpack_error:
            raise StateDecodeError(f'Malformed state key of {len(key) if isinstance(key, (bytes, bytearray)) else "?"} bytes: {unpack_error}')

        locations: tuple[int, ...] = fields[:self._process_count]
        for pid, (location, count) in enumerate(zip(locations, self._location_counts)):
            if location >= count:
                raise StateDecodeError(f'Location index {location} of process {pid} out of range')
        values: tuple[int, ...] = tuple(offset + lo for offset, lo in zip(fields[self._process_count:], self._lows))
        for slot, value in enumerate(values):
            if value > self._highs[slot]:
                raise StateDecodeError(f'Value {value} of {self.compiled.slots[slot].name} out of range')
        return SystemState(locations, values)


def encode(system: Union[SystemDef, CompiledSystem, StateCodec], state: SystemState) -> bytes:
    codec: StateCodec = system if isinstance(system, StateCodec) else StateCodec(as_compiled(system))
    return codec.encode(state)

def decode(key: bytes, system: Union[SystemDef, CompiledSystem, StateCodec]) -> SystemState:
    codec: StateCodec = system if isinstance(system, StateCodec) else StateCodec(as_compiled(system))
    return codec.decode(key)
