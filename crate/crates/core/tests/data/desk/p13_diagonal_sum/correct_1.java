import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        long[][] m = new long[n][n];
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                m[i][j] = sc.nextLong();
        long s = 0;
        for (int i = 0; i < n; i++) {
            s += m[i][i];
            if (i != n - 1 - i) s += m[i][n - 1 - i];
        }
        System.out.println(s);
    }
}
