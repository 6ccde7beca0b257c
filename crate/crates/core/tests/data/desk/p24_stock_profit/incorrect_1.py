import sys

def profit(prices):
    gain = 0
    for k in range(1, len(prices)):
        gain = max(gain, prices[k] - prices[k - 1])
    return gain

sys.stdin.readline()
print(profit([int(t) for t in sys.stdin.readline().split()]))
