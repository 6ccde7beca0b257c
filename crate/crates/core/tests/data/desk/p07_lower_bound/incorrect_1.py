import sys

def find_first(arr, target):
    for idx, val in enumerate(arr):
        if val > target:
            return idx
    return len(arr)

tokens = sys.stdin.read().split()
n, q = int(tokens[0]), int(tokens[1])
arr = list(map(int, tokens[2:2 + n]))
answers = [find_first(arr, int(t)) for t in tokens[2 + n:2 + n + q]]
print("\n".join(map(str, answers)))
