import sys

MOD = 1000000007


def count_paths(rows):
    w = len(rows[0])
    line = [0] * w
    line[0] = 1
    for row in rows:
        for j, cell in enumerate(row):
            if cell == "#":
                line[j] = 0
            elif j > 0:
                line[j] = (line[j] + line[j - 1]) % MOD
    return line[-1]


h, w = map(int, sys.stdin.readline().split())
print(count_paths([sys.stdin.readline().strip() for _ in range(h)]))
