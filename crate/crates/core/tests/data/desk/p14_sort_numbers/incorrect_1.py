import sys

def selection(xs):
    out = []
    pool = list(xs)
    while pool:
        smallest = min(pool)
        out.append(smallest)
        pool = [v for v in pool if v != smallest]
    return out

sys.stdin.readline()
xs = [int(t) for t in sys.stdin.readline().split()]
print(" ".join(str(v) for v in selection(xs)))
