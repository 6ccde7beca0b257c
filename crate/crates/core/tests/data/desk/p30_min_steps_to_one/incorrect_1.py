import sys

def reduce_steps(v):
    if v <= 1:
        return 0
    if v % 3 == 0:
        return 1 + reduce_steps(v // 3)
    if v % 2 == 0:
        return 1 + reduce_steps(v // 2)
    return 1 + reduce_steps(v - 1)

print(reduce_steps(int(sys.stdin.readline())))
