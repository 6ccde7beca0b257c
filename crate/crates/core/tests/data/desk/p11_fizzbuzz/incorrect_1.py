import sys

limit = int(sys.stdin.readline())
lines = []
for k in range(1, limit):
    label = ""
    if k % 3 == 0:
        label = "Fizz"
    if k % 5 == 0:
        label = "Buzz"
    lines.append(label if label else str(k))
sys.stdout.write("\n".join(lines) + "\n")
