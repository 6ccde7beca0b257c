import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        final long MOD = 1_000_000_007L;
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        long a = 0, b = 1;
        for (int i = 0; i < n; i++) {
            long t = (a + b) % MOD;
            a = b;
            b = t;
        }
        System.out.println(a);
    }
}
