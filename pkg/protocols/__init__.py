'''Builders for the TCP three-way and SCTP four-way handshake systems and their standard properties'''
