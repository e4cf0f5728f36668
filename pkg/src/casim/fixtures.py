"""Golden rule-30 grid: 31 entities, seed at index 15, initial row plus 15 steps."""

RULE30_E31_GRID = """\
0000000000000001000000000000000
0000000000000011100000000000000
0000000000000110010000000000000
0000000000001101111000000000000
0000000000011001000100000000000
0000000000110111101110000000000
0000000001100100001001000000000
0000000011011110011111100000000
0000000110010001110000010000000
0000001101111011001000111000000
0000011001000010111101100100000
0000110111100110100001011110000
0001100100011100110011010001000
0011011110110011101110011011100
0110010000101110001001110010010
1101111001101001011111001111111
"""

FIXTURE_RULE = 30
FIXTURE_ENTITIES = 31
FIXTURE_SEED = 15
FIXTURE_STEPS = 15
