"""Zero-divisor apparatus of XOR-indexed Cayley-Dickson algebras."""
