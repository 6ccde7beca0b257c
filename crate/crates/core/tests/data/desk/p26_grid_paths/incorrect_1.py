import sys
from functools import lru_cache

def main():
    h, w = map(int, sys.stdin.readline().split())
    cells = [sys.stdin.readline().strip() for _ in range(h)]

    @lru_cache(maxsize=None)
    def ways(i, j):
        if i == 0 or j == 0:
            return 1
        if cells[i][j] == "#":
            return 0
        return (ways(i - 1, j) + ways(i, j - 1)) % 1000000007

    print(ways(h - 1, w - 1))

main()
