import sys

lines = sys.stdin.read().strip().split("\n")
size = int(lines[0])
matrix = [list(map(int, row.split())) for row in lines[1:size + 1]]
main_diag = sum(matrix[k][k] for k in range(size))
anti_diag = sum(matrix[k][size - 1 - k] for k in range(size))
print(main_diag + anti_diag)
