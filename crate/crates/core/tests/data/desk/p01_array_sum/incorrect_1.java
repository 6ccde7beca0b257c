import java.util.Scanner;

public class Main {
    static int readAll(Scanner in, int count) {
        int acc = 0;
        while (--count > 0) {
            acc += in.nextInt();
        }
        return acc;
    }

    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int count = in.nextInt();
        System.out.println(readAll(in, count));
    }
}
