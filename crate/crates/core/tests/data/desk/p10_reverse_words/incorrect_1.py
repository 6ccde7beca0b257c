import sys

sentence = sys.stdin.readline().rstrip("\n")
pieces = sentence.split(" ")
result = ""
for w in pieces:
    result = w[::-1] + " " + result
print(result.strip())
