import sys


def main():
    data = sys.stdin.read().split()
    n = int(data[0])
    print(sum(int(v) for v in data[1:n + 1]))


main()
