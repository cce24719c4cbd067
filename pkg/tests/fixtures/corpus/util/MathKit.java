package util;

public final class MathKit {
    public static final double PI = 3.14159;

    private MathKit() {
    }

    public static double square(double x) {
        return x * x;
    }

    public static int clamp(int value, int low, int high) {
        // clip into the inclusive range
        if (value < low) {
            return low;
        }
        return value > high ? high : value;
    }
}
