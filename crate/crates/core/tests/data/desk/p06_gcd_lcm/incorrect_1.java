import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int p = in.nextInt();
        int q = in.nextInt();
        int g = 1;
        for (int d = 1; d < Math.min(p, q); d++) {
            if (p % d == 0 && q % d == 0) g = d;
        }
        System.out.println(g + " " + (p * q / g));
    }
}
