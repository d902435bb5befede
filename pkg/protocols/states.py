'''Connection/association state codes and channel sets of the modelled handshakes'''
from enum import Enum, IntEnum
from typing import Final

__all__ = ('NONE', 'Protocol', 'TcpState', 'SctpState', 'TCP_CHANNELS', 'SCTP_CHANNELS', 'state_enum', 'channel_set')

# Sentinel for an unset peer or requester
NONE: Final[int] = -1

class Protocol(Enum):
    TCP     = 'tcp'
    SCTP    = 'sctp'

class TcpState(IntEnum):
    '''Endpoint states of the three-way handshake'''
    CLOSED          = 0
    LISTEN          = 1
    SYN_SENT        = 2
    SYN_RECEIVED    = 3
    ESTABLISHED     = 4

class SctpState(IntEnum):
    '''Endpoint states of the four-way handshake; LISTEN marks a free server TCB entry'''
    CLOSED          = 0
    LISTEN          = 1
    COOKIE_WAIT     = 2
    COOKIE_ECHOED   = 3
    ESTABLISHED     = 4

TCP_CHANNELS: Final[tuple[str, ...]] = ('syn', 'syn_ack', 'ack', 'reset_syn', 'reset_syn_ack', 'end_conn')
SCTP_CHANNELS: Final[tuple[str, ...]] = ('initiation', 'init_ack', 'cookie_echo', 'cookie_ack', 'abort_init', 'end_assoc')

def state_enum(protocol: Protocol) -> type[IntEnum]:
    return TcpState if protocol is Protocol.TCP else SctpState

def channel_set(protocol: Protocol) -> tuple[str, ...]:
    return TCP_CHANNELS if protocol is Protocol.TCP else SCTP_CHANNELS
