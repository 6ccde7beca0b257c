import java.util.Scanner;

public class Main {
    static int steps(int v) {
        if (v <= 1) return 0;
        if (v % 3 == 0) return 1 + steps(v / 3);
        if (v % 2 == 0) return 1 + steps(v / 2);
        return 1 + steps(v - 1);
    }

    public static void main(String[] args) {
        System.out.println(steps(new Scanner(System.in).nextInt()));
    }
}
