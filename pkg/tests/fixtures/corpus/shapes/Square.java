package shapes;

import util.Registry;

public class Square extends Shape {
    double side;

    public Square(int id, double side) {
        super(id);
        this.side = side;
    }

    public double area() {
        return side * side;
    }

    public double scaledArea(Registry registry) {
        double total = 0;
        for (int i = 0; i < 3; i++) {
            total = total + registry.getScale() * area();
        }
        return total;
    }

    public String describeVia(Registry registry) {
        return registry.getOwner().getName().trim();
    }
}
