import java.util.*;

public class Main {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int n = in.nextInt();
        int goal = in.nextInt();
        Set<Integer> values = new HashSet<>();
        int[] nums = new int[n];
        for (int i = 0; i < n; i++) {
            nums[i] = in.nextInt();
            values.add(nums[i]);
        }
        int hits = 0;
        for (int v : nums) {
            if (values.contains(goal - v) && v < goal - v) hits++;
        }
        System.out.println(hits);
    }
}
