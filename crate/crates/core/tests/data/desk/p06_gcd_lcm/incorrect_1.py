import sys

def common_divisor(p, q):
    best = 1
    d = 1
    while d < min(p, q):
        if p % d == 0 and q % d == 0:
            best = d
        d += 1
    return best

p, q = map(int, sys.stdin.readline().split())
g = common_divisor(p, q)
sys.stdout.write("%d %d\n" % (g, p * q // g))
