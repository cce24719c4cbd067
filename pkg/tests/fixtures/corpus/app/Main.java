package app;

import shapes.Circle;
import shapes.Square;
import util.MathKit;
import util.Owner;
import util.Registry;

public class Main {

    public static void main(String[] args) {
        Registry registry = new Registry(2.0, new Owner("demo"));
        Circle circle = new Circle(1, 5.0);
        Square square = new Square(2, 3.0);
        run(registry, circle, square);
    }

    static double run(Registry registry, Circle circle, Square square) {
        double sum = 0;
        int guard = 0;
        while (guard < 2 && registry.getScale() > 0) {
            sum = sum + circle.area() + square.area();
            guard = MathKit.clamp(guard + 1, 0, 9);
        }
        switch (guard) {
            case 0:
                registry.touch();
                break;
            case 1:
                break;
            default:
                sum = sum - 1;
        }
        try {
            sum = sum / registry.getOwner().getName().length();
        } catch (ArithmeticException e) {
            sum = 0;
        }
        return sum;
    }
}
