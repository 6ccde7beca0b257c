import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        String digits = new Scanner(System.in).next();
        int total = 0;
        for (int i = 1; i < digits.length(); i++) {
            total += digits.charAt(i) - '0';
        }
        System.out.println(total);
    }
}
